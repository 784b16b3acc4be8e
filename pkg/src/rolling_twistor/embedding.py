"""Isometric embeddings of the distinguished revolution metrics in R^3.

A metric (beta + alpha rho^2)^2 drho^2 + rho^2 dpsi^2 embeds as a surface of
revolution (X, Y, Z) = (rho cos psi, rho sin psi, Z(rho)) wherever
h^2 = (beta + alpha rho^2)^2 >= 1, with Z' = sqrt(h^2 - 1).  For the
normal-form families the height integral is elementary for eps = +-1,
producing algebraic surfaces (X^2 + Y^2 + 2 eps)^3 = 9 Z^2, and an elliptic
integral for eps = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError
from .surfaces import G2Family, RevolutionProfile, Surface

QUAD_ABS_TOL = 1e-12


def _z_plus(rho):
    return (rho * rho + 2.0) ** 1.5 / 3.0


def _z_minus(rho):
    return (rho * rho - 2.0) ** 1.5 / 3.0


def _z_zero(rho):
    # Z = integral_1^rho sqrt(x^4 - 1); the substitution x = 1 + s^2 removes
    # the square-root branch point at the lower endpoint:
    # integrand -> 2 s^2 sqrt(4 + 6 s^2 + 4 s^4 + s^6), smooth at s = 0
    if rho < 1.0:
        raise DomainError(f"the eps=0 embedding needs rho >= 1, got {rho}")
    s_max = math.sqrt(rho - 1.0)

    def f(s):
        s2 = s * s
        return 2.0 * s2 * math.sqrt(4.0 + 6.0 * s2 + 4.0 * s2**2 + s2**3)

    val, _ = quad(f, 0.0, s_max, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return val


def embed_point(eps, rho, phi):
    """Embedded point of the eps-family at (rho, phi).

    Domains: eps=+1 needs rho >= 0; eps=-1 needs rho >= sqrt(2);
    eps=0 needs rho >= 1 (heights measured from rho = 1).
    """
    if eps == 1:
        if rho < 0.0:
            raise DomainError(f"the eps=+1 embedding needs rho >= 0, got {rho}")
        z = _z_plus(rho)
    elif eps == -1:
        if rho < math.sqrt(2.0) - 1e-12:
            raise DomainError(f"the eps=-1 embedding needs rho >= sqrt(2), got {rho}")
        z = _z_minus(max(rho, math.sqrt(2.0)))
    elif eps == 0:
        z = _z_zero(rho)
    else:
        raise ValueError("eps must be -1, 0 or +1")
    return rho * math.cos(phi), rho * math.sin(phi), z


def algebraic_residual(eps, x, y, z):
    """(X^2 + Y^2 + 2 eps)^3 - 9 Z^2; zero on the eps=+-1 embedded surfaces."""
    if eps not in (-1, 1):
        raise ValueError("the algebraic identity holds for eps = -1 or +1")
    return (x * x + y * y + 2.0 * eps) ** 3 - 9.0 * z * z


def embed_negative_curvature(rho, phi):
    """Embedding of the negative-curvature portion of the metric
    (rho^2 - 5)^2 drho^2 + rho^2 dpsi^2; valid on 0 <= rho <= 2 where
    Z' = sqrt((rho^2 - 6)(rho^2 - 4)) is real."""
    if not (0.0 <= rho <= 2.0):
        raise DomainError(f"this branch embeds 0 <= rho <= 2 only, got {rho}")

    def f(x):
        return math.sqrt(max((x * x - 6.0) * (x * x - 4.0), 0.0))

    z, _ = quad(f, 0.0, rho, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return rho * math.cos(phi), rho * math.sin(phi), z


def profile_height(surface, rho, rho_start):
    """Height Z(rho) = integral sqrt(h^2 - 1) for a general profile family."""
    def f(x):
        return math.sqrt(max(surface.h(x) ** 2 - 1.0, 0.0))

    z, _ = quad(f, rho_start, rho, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return z


@dataclass(frozen=True)
class RevolutionMesh:
    """Vertex grid of an embedded revolution surface."""

    family_tag: str
    eps: int | None
    rho: np.ndarray  # (nr,)
    phi: np.ndarray  # (nphi,)
    xyz: np.ndarray  # (nr, nphi, 3)

    @property
    def n_vertices(self):
        return self.xyz.shape[0] * self.xyz.shape[1]


def _height_profile(family, rho_values):
    """Z(rho_i) for a catalog family, validating the whole range first."""
    lo, hi = float(rho_values[0]), float(rho_values[-1])
    if isinstance(family, G2Family):
        if family.eps == 1:
            if lo < 0.0:
                raise DomainError("eps=+1 embeds rho >= 0 only")
            return np.array([_z_plus(r) for r in rho_values]), family.eps
        if family.eps == -1:
            if lo < math.sqrt(2.0) - 1e-12:
                raise DomainError(
                    f"eps=-1 embeds rho >= sqrt(2) only (requested lo = {lo})"
                )
            return np.array([_z_minus(r) for r in rho_values]), family.eps
        if lo < 1.0:
            raise DomainError(f"eps=0 embeds rho >= 1 only (requested lo = {lo})")
        return np.array([_z_zero(r) for r in rho_values]), family.eps
    if isinstance(family, RevolutionProfile):
        # h is monotone in rho, so its range is the endpoint interval; the
        # embedding needs that interval to avoid (-1, 1) entirely
        h_lo, h_hi = sorted((family.h(lo), family.h(hi)))
        if not (h_hi <= -1.0 or h_lo >= 1.0):
            raise DomainError(
                "profile embeds only where (beta + alpha rho^2)^2 >= 1 on the whole range"
            )
        heights = np.array([profile_height(family, r, lo) for r in rho_values])
        return heights, None
    raise ValueError(f"no embedding rule for family {family!r}")


def build_mesh(family, rho_range, nr, nphi, z_func=None):
    """Sample the embedded surface on an (nr x nphi) grid.

    `z_func`, when given, overrides the family height profile (used for
    synthetic meshes such as the flat disk)."""
    lo, hi = (float(rho_range[0]), float(rho_range[1]))
    if not (hi > lo):
        raise ValueError("empty rho range")
    if nr < 2 or nphi < 2:
        raise ValueError("mesh needs at least 2 samples per direction")
    rho = np.linspace(lo, hi, nr)
    phi = np.linspace(0.0, 2.0 * math.pi, nphi)
    if z_func is not None:
        heights = np.array([float(z_func(r)) for r in rho])
        eps = getattr(family, "eps", None)
        tag = family.kind if isinstance(family, Surface) else str(family)
    else:
        heights, eps = _height_profile(family, rho)
        tag = family.kind
    xyz = np.empty((nr, nphi, 3))
    xyz[:, :, 0] = rho[:, None] * np.cos(phi)[None, :]
    xyz[:, :, 1] = rho[:, None] * np.sin(phi)[None, :]
    xyz[:, :, 2] = heights[:, None]
    return RevolutionMesh(family_tag=tag, eps=eps, rho=rho, phi=phi, xyz=xyz)


RHO_STENCIL = 7  # centered 7-point along the profile direction
RHO_MARGIN = RHO_STENCIL // 2
PHI_STENCIL = 13  # periodic stencil along the angle, exact to high order


def _is_full_circle(mesh):
    return abs((mesh.phi[-1] - mesh.phi[0]) - 2.0 * math.pi) < 1e-12


def _phi_derivative(values, dphi, deriv=1):
    """Periodic centered stencil derivative along axis 1.

    The grid duplicates the seam column (phi = 0 and 2 pi), so the unique
    columns are values[:, :-1]; the duplicate column is rebuilt at the end.
    """
    from .finitediff import fd_weights

    m = values.shape[1] - 1
    width = min(PHI_STENCIL, m if m % 2 == 1 else m - 1)
    half = width // 2
    w = fd_weights(np.arange(width, dtype=float), float(half), deriv)[:, deriv] / dphi**deriv
    unique = values[:, :-1]
    out = np.zeros_like(unique)
    for s in range(width):
        out += w[s] * np.roll(unique, half - s, axis=1)
    return np.concatenate([out, out[:, :1]], axis=1)


def _rho_derivative(values, drho):
    """Centered 7-point derivative along axis 0 (shifted near the edges;
    callers measure on interior rows where stencils are fully centered)."""
    from .finitediff import fd_weights

    nr = values.shape[0]
    width = min(RHO_STENCIL, nr)
    offsets = np.arange(width, dtype=float)
    out = np.empty_like(values)
    for i in range(nr):
        lo = min(max(i - width // 2, 0), nr - width)
        w = fd_weights(offsets, float(i - lo), 1)[:, 1] / drho
        out[i] = np.tensordot(w, values[lo : lo + width], axes=(0, 0))
    return out


def _grid_partials(mesh):
    """FD tangents X_rho, X_phi over the grid."""
    drho = float(mesh.rho[1] - mesh.rho[0])
    dphi = float(mesh.phi[1] - mesh.phi[0])
    x_r = _rho_derivative(mesh.xyz, drho)
    if _is_full_circle(mesh):
        x_p = _phi_derivative(mesh.xyz, dphi)
    else:
        x_p = np.swapaxes(_rho_derivative(np.swapaxes(mesh.xyz, 0, 1), dphi), 0, 1)
    return x_r, x_p


def induced_metric_residual(mesh, h_of_rho):
    """Max deviation of the FD first fundamental form from the target metric
    h(rho)^2 drho^2 + rho^2 dphi^2, over interior rows (where the profile
    stencils are fully centered).

    `h_of_rho` may be a callable or a catalog revolution family."""
    h = h_of_rho.h if isinstance(h_of_rho, Surface) else h_of_rho
    x_r, x_p = _grid_partials(mesh)
    E = np.einsum("ijk,ijk->ij", x_r, x_r)
    F = np.einsum("ijk,ijk->ij", x_r, x_p)
    G = np.einsum("ijk,ijk->ij", x_p, x_p)
    E_target = np.array([float(h(r)) ** 2 for r in mesh.rho])[:, None]
    G_target = (mesh.rho**2)[:, None]
    sl = slice(RHO_MARGIN, len(mesh.rho) - RHO_MARGIN)
    return float(
        max(
            np.max(np.abs((E - E_target)[sl])),
            np.max(np.abs(F[sl])),
            np.max(np.abs((G - G_target)[sl])),
        )
    )


def mesh_gauss_curvature(mesh, margin=2 * RHO_MARGIN):
    """Gauss curvature on interior rows from FD first and second fundamental
    forms; returns (rho values, curvature array) for rows with fully
    centered nested stencils."""
    drho = float(mesh.rho[1] - mesh.rho[0])
    dphi = float(mesh.phi[1] - mesh.phi[0])
    x_r, x_p = _grid_partials(mesh)
    x_rr = _rho_derivative(x_r, drho)
    x_rp = _rho_derivative(x_p, drho)
    if _is_full_circle(mesh):
        x_pp = _phi_derivative(x_p, dphi)
    else:
        x_pp = np.swapaxes(_rho_derivative(np.swapaxes(x_p, 0, 1), dphi), 0, 1)
    normal = np.cross(x_r, x_p)
    normal = normal / np.linalg.norm(normal, axis=2, keepdims=True)
    E = np.einsum("ijk,ijk->ij", x_r, x_r)
    F = np.einsum("ijk,ijk->ij", x_r, x_p)
    G = np.einsum("ijk,ijk->ij", x_p, x_p)
    L = np.einsum("ijk,ijk->ij", x_rr, normal)
    M = np.einsum("ijk,ijk->ij", x_rp, normal)
    N = np.einsum("ijk,ijk->ij", x_pp, normal)
    K = (L * N - M * M) / (E * G - F * F)
    sl = slice(margin, len(mesh.rho) - margin)
    return mesh.rho[sl], K[sl]


def emit_mesh(family, rho_range, nr, nphi, destination):
    """Write the mesh in the plain-text grid format.

    Header `# family=<tag> eps=<v> nr=<n> nphi=<m>`, vertex rows `i j X Y Z`,
    then quad rows `q i1 i2 i3 i4` (flat vertex index = i * nphi + j).
    Domain errors are raised before anything is written.
    """
    mesh = build_mesh(family, rho_range, nr, nphi)
    close = False
    if isinstance(destination, (str, bytes)):
        fh = open(destination, "w", encoding="utf-8")
        close = True
    else:
        fh = destination
    try:
        eps = mesh.eps if mesh.eps is not None else "none"
        fh.write(f"# family={mesh.family_tag} eps={eps} nr={nr} nphi={nphi}\n")
        for i in range(nr):
            for j in range(nphi):
                x, y, z = mesh.xyz[i, j]
                fh.write(f"{i} {j} {x:.17g} {y:.17g} {z:.17g}\n")
        for i in range(nr - 1):
            for j in range(nphi - 1):
                v00 = i * nphi + j
                v10 = (i + 1) * nphi + j
                v11 = (i + 1) * nphi + j + 1
                v01 = i * nphi + j + 1
                fh.write(f"q {v00} {v10} {v11} {v01}\n")
    finally:
        if close:
            fh.close()
    return mesh


def load_mesh(path):
    """Parse a mesh file back into vertices and quads (testing helper)."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("# family="):
            raise ValueError(f"not a mesh file: {path}")
        fields = dict(part.split("=") for part in header[2:].split())
        nr, nphi = int(fields["nr"]), int(fields["nphi"])
        verts = np.empty((nr, nphi, 3))
        quads = []
        for line in fh:
            parts = line.split()
            if parts[0] == "q":
                quads.append(tuple(int(t) for t in parts[1:]))
            else:
                i, j = int(parts[0]), int(parts[1])
                verts[i, j] = [float(parts[2]), float(parts[3]), float(parts[4])]
    return fields, verts, quads
