"""Truncated Taylor-series ("higher-order dual number") arithmetic.

A `TaylorJet` tracks the value and the first few derivatives of a scalar
function of one variable through arithmetic and elementary functions.  It is
exact (up to rounding) for rational expressions, which is what the surface
catalog needs: curvature formulas are rational in the profile coordinate, and
the fourth e1-derivative of the curvature feeds the quartic invariants, where
finite differences would be fragile.
"""

from __future__ import annotations

import math

import numpy as np


class TaylorJet:
    """Taylor coefficients c[k] = f^(k)(x0)/k! of a function at a point.

    Arithmetic truncates to the shorter operand, so derived quantities lose
    one order per differentiation, never silently gaining bogus terms.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.atleast_1d(np.asarray(coeffs, dtype=float))

    @classmethod
    def variable(cls, x0, order):
        c = np.zeros(order + 1)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, x0, order):
        c = np.zeros(order + 1)
        c[0] = x0
        return cls(c)

    @property
    def order(self):
        return len(self.c) - 1

    @property
    def value(self):
        return float(self.c[0])

    def deriv(self, k):
        """k-th derivative f^(k)(x0)."""
        if k > self.order:
            raise ValueError(f"jet of order {self.order} has no derivative {k}")
        return float(self.c[k] * math.factorial(k))

    def derivatives(self):
        """Array [f, f', f'', ...] up to the jet order."""
        return self.c * np.array([math.factorial(k) for k in range(len(self.c))])

    def derivative(self):
        """Jet of f', one order lower."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, len(self.c))
        return TaylorJet(self.c[1:] * k)

    def truncate(self, order):
        if order >= self.order:
            return self
        return TaylorJet(self.c[: order + 1])

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TaylorJet):
            n = min(len(self.c), len(other.c))
            return self.c[:n], other.c[:n]
        b = np.zeros_like(self.c)
        b[0] = float(other)
        return self.c, b

    def __add__(self, other):
        a, b = self._coerce(other)
        return TaylorJet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return TaylorJet(a - b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return TaylorJet(b - a)

    def __neg__(self):
        return TaylorJet(-self.c)

    def __mul__(self, other):
        a, b = self._coerce(other)
        n = len(a)
        out = np.zeros(n)
        for k in range(n):
            out[k] = np.dot(a[: k + 1], b[k::-1])
        return TaylorJet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if b[0] == 0.0:
            raise ZeroDivisionError("division by a jet with zero value")
        n = len(a)
        q = np.zeros(n)
        for k in range(n):
            q[k] = (a[k] - np.dot(q[:k], b[k:0:-1])) / b[0]
        return TaylorJet(q)

    def __rtruediv__(self, other):
        return TaylorJet.constant(float(other), self.order) / self

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)):
            raise TypeError("jet powers must be integers; use sqrt() for 1/2")
        if n == 0:
            return TaylorJet.constant(1.0, self.order)
        base = self if n > 0 else 1.0 / self
        out = base
        for _ in range(abs(int(n)) - 1):
            out = out * base
        return out

    # -- elementary functions (numpy dispatches np.exp(jet) etc. to these) --

    def sqrt(self):
        a = self.c
        if a[0] <= 0.0:
            raise ValueError("sqrt of a jet with non-positive value")
        n = len(a)
        s = np.zeros(n)
        s[0] = math.sqrt(a[0])
        for k in range(1, n):
            s[k] = (a[k] - np.dot(s[1:k], s[k - 1 : 0 : -1])) / (2.0 * s[0])
        return TaylorJet(s)

    def exp(self):
        a = self.c
        n = len(a)
        e = np.zeros(n)
        e[0] = math.exp(a[0])
        for k in range(1, n):
            j = np.arange(1, k + 1)
            e[k] = np.dot(j * a[1 : k + 1], e[k - 1 :: -1][:k]) / k
        return TaylorJet(e)

    def log(self):
        a = self.c
        if a[0] <= 0.0:
            raise ValueError("log of a jet with non-positive value")
        n = len(a)
        l = np.zeros(n)
        l[0] = math.log(a[0])
        for k in range(1, n):
            j = np.arange(1, k)
            s = np.dot(j * l[1:k], a[k - 1 : 0 : -1]) if k > 1 else 0.0
            l[k] = (k * a[k] - s) / (k * a[0])
        return TaylorJet(l)

    def _sincos(self):
        a = self.c
        n = len(a)
        s = np.zeros(n)
        c = np.zeros(n)
        s[0], c[0] = math.sin(a[0]), math.cos(a[0])
        for k in range(1, n):
            j = np.arange(1, k + 1)
            ja = j * a[1 : k + 1]
            s[k] = np.dot(ja, c[k - 1 :: -1][:k]) / k
            c[k] = -np.dot(ja, s[k - 1 :: -1][:k]) / k
        return TaylorJet(s), TaylorJet(c)

    def sin(self):
        return self._sincos()[0]

    def cos(self):
        return self._sincos()[1]

    def sinh(self):
        e = self.exp()
        return (e - 1.0 / e) * 0.5

    def cosh(self):
        e = self.exp()
        return (e + 1.0 / e) * 0.5

    def __repr__(self):
        return f"TaylorJet({self.c.tolist()})"
