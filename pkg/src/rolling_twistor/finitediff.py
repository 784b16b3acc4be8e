"""Finite-difference and sampled-data helpers.

High-order stencils are generated with Fornberg's recursion, so the
trajectory diagnostics can measure derivatives of sampled curves well below
the integrator's own error order.
"""

from __future__ import annotations

import numpy as np


def fd_weights(nodes, x0, m):
    """Weights for derivatives 0..m at x0 from arbitrary nodes (Fornberg).

    Returns an array w of shape (len(nodes), m+1); column k gives the weights
    of the k-th derivative.
    """
    x = np.asarray(nodes, dtype=float)
    n = len(x)
    if m >= n:
        raise ValueError("need more nodes than the requested derivative order")
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


def sampled_derivative(values, dt, order=6, deriv=1):
    """Derivative of uniformly sampled data along axis 0.

    Uses centered (order+1)-point stencils in the interior and shifted
    stencils of the same width near the boundary, so the accuracy order is
    uniform across the sample range.
    """
    y = np.asarray(values, dtype=float)
    n = y.shape[0]
    width = order + 1
    if width > n:
        width = n
    if width <= deriv:
        raise ValueError("not enough samples for the requested derivative")
    half = width // 2
    out = np.empty_like(y)
    offsets = np.arange(width, dtype=float)
    for i in range(n):
        lo = min(max(i - half, 0), n - width)
        w = fd_weights(offsets, float(i - lo), deriv)[:, deriv]
        out[i] = np.tensordot(w, y[lo : lo + width], axes=(0, 0)) / dt**deriv
    return out


def _interval_weights(nodes, a, b):
    # exact integration weights over [a, b] for the Lagrange interpolant
    # through `nodes`: solve the Vandermonde moment system
    x = np.asarray(nodes, dtype=float)
    n = len(x)
    powers = np.arange(n)
    vand = x[None, :] ** powers[:, None]
    moments = (b ** (powers + 1) - a ** (powers + 1)) / (powers + 1)
    return np.linalg.solve(vand, moments)


def cumulative_integral(values, dt, order=4):
    """Cumulative integral of uniformly sampled data (4th-order accurate).

    Each interval [t_k, t_{k+1}] is integrated with the local degree-(order-1)
    interpolant through `order` neighbouring samples.
    """
    y = np.asarray(values, dtype=float)
    n = y.shape[0]
    width = min(order, n)
    out = np.zeros(y.shape)
    acc = np.zeros(y.shape[1:]) if y.ndim > 1 else 0.0
    for k in range(n - 1):
        lo = min(max(k - (width - 1) // 2, 0), n - width)
        w = _interval_weights(np.arange(width, dtype=float), k - lo, k - lo + 1.0)
        acc = acc + dt * np.tensordot(w, y[lo : lo + width], axes=(0, 0))
        out[k + 1] = acc
    return out
