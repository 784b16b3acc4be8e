"""Velocity/twistor distribution on the 5-dimensional configuration space.

The configuration chart is (x, y, u, v, phi): surface-1 chart coordinates,
surface-2 chart coordinates, and the contact-frame rotation angle.  The
restricted velocity space is spanned by two fields X1, X2; their iterated
commutators X3 = [X1, X2], X4 = [X1, X3], X5 = [X2, X3] have closed forms in
terms of the surface jets, and away from curvature-matching points the five
fields frame the space (rank growth 2, 3, 5).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IntegrablePointError, StepSizeError

INTEGRABLE_TOL = 1e-10
RANK_TOL = 1e-7  # singular value threshold, relative to the largest


@dataclass(frozen=True)
class ConfigPoint:
    """Chart point (x, y, u, v, phi) of the configuration space."""

    x: float
    y: float
    u: float
    v: float
    phi: float

    def as_array(self):
        return np.array([self.x, self.y, self.u, self.v, self.phi])

    @classmethod
    def from_array(cls, a):
        return cls(*(float(t) for t in a))

    def reduced(self):
        """Same point with phi reduced mod 2 pi."""
        return ConfigPoint(self.x, self.y, self.u, self.v, self.phi % (2.0 * np.pi))


def _as_point5(p):
    if isinstance(p, ConfigPoint):
        return p.as_array()
    a = np.asarray(p, dtype=float)
    if a.shape != (5,):
        raise ValueError("configuration points have 5 coordinates")
    return a


def validate_point(s1, s2, p):
    a = _as_point5(p)
    s1.validate((a[0], a[1]))
    s2.validate((a[2], a[3]))


def velocity_fields(s1, s2):
    """The two admissible-velocity fields X1, X2 as coordinate-basis callables.

    These are simultaneously the no-slip/no-twist velocity fields of the
    rolling system and the horizontal lifts of the null-plane spanning
    vectors; the fiber coefficients are z1 = -a1 + a3 cos phi + a4 sin phi
    and z2 = -a2 - a3 sin phi + a4 cos phi.
    """

    def X1(p):
        a = _as_point5(p)
        j1 = s1.jet((a[0], a[1]))
        j2 = s2.jet((a[2], a[3]))
        f1 = s1.frame((a[0], a[1]))
        f2 = s2.frame((a[2], a[3]))
        c, s = np.cos(a[4]), np.sin(a[4])
        out = np.empty(5)
        out[0:2] = f1[0]
        out[2:4] = c * f2[0] + s * f2[1]
        out[4] = -j1.a1 + j2.a1 * c + j2.a2 * s
        return out

    def X2(p):
        a = _as_point5(p)
        j1 = s1.jet((a[0], a[1]))
        j2 = s2.jet((a[2], a[3]))
        f1 = s1.frame((a[0], a[1]))
        f2 = s2.frame((a[2], a[3]))
        c, s = np.cos(a[4]), np.sin(a[4])
        out = np.empty(5)
        out[0:2] = f1[1]
        out[2:4] = -s * f2[0] + c * f2[1]
        out[4] = -j1.a2 - j2.a1 * s + j2.a2 * c
        return out

    return X1, X2


def _killing_data(s1, s2, a):
    """Jet-level quantities the closed bracket formulas need.

    For the rotationally adapted catalog frames a1 = 0, so a11 = a12 = 0,
    a22 = 0 and a21 = kappa + a2^2 (the structure identity of the curvature),
    and the angular derivative kappa2 vanishes; same on the second surface.
    """
    j1 = s1.jet((a[0], a[1]))
    j2 = s2.jet((a[2], a[3]))
    return j1, j2


def frame_fields(s1, s2):
    """Closed-form fields (X1, X2, X3, X4, X5) of the derived frame."""
    X1, X2 = velocity_fields(s1, s2)

    def X3(p):
        a = _as_point5(p)
        j1, j2 = _killing_data(s1, s2, a)
        out = j1.a1 * X1(a) + j1.a2 * X2(a)
        out[4] += j2.kappa - j1.kappa
        return out

    def _x45(a, which):
        j1, j2 = _killing_data(s1, s2, a)
        kappa, lam = j1.kappa, j2.kappa
        dl = lam - kappa
        _require_noninteg(kappa, lam)
        f2 = s2.frame((a[2], a[3]))
        c, s = np.cos(a[4]), np.sin(a[4])
        a2, a4 = j1.a2, j2.a2
        a3 = j2.a1  # zero for the catalog
        lam3, lam4 = j2.kappa1, 0.0
        a11, a12, a22 = 0.0, 0.0, 0.0
        a21 = kappa + a2 * a2
        if which == 4:
            F = j1.kappa1 / dl - (a3 + lam4 / dl) * s + (a4 - lam3 / dl) * c
            # X3-coefficient a2 - F (not -F): expanding [X1, X3] produces an
            # extra a2 X3 from a2 [X1, X2]; confirmed by the numerical bracket
            out = (a11 + j1.a1 * F) * X1(a) + (a21 + a2 * F) * X2(a) + (a2 - F) * X3(a)
            out[2:4] += dl * (s * f2[0] - c * f2[1])
        else:
            kappa2 = 0.0  # e2-derivative of kappa; zero in the adapted frame
            G = kappa2 / dl - (a4 - lam3 / dl) * s - (a3 + lam4 / dl) * c
            # symmetric correction: [X2, a1 X1] contributes -a1 X3
            out = (a12 + j1.a1 * G) * X1(a) + (a22 + a2 * G) * X2(a) + (-j1.a1 - G) * X3(a)
            out[2:4] += dl * (c * f2[0] + s * f2[1])
        return out

    def X4(p):
        return _x45(_as_point5(p), 4)

    def X5(p):
        return _x45(_as_point5(p), 5)

    return X1, X2, X3, X4, X5


def _require_noninteg(kappa, lam):
    if abs(kappa - lam) <= INTEGRABLE_TOL * max(abs(kappa), abs(lam), 1.0):
        raise IntegrablePointError(
            f"equal curvatures (kappa = {kappa}, lambda = {lam}): distribution is integrable"
        )


@dataclass(frozen=True)
class Frame5:
    """Derived frame evaluated at a point: rows of `matrix` are X1..X5."""

    point: np.ndarray
    matrix: np.ndarray

    @property
    def determinant(self):
        return float(np.linalg.det(self.matrix))


def derived_frame(s1, s2, p):
    """Closed-form derived frame at p; requires unequal curvatures there."""
    a = _as_point5(p)
    j1, j2 = _killing_data(s1, s2, a)
    _require_noninteg(j1.kappa, j2.kappa)
    fields = frame_fields(s1, s2)
    return Frame5(point=a, matrix=np.array([f(a) for f in fields]))


def jacobian(field, p, h=None, richardson=True):
    """Jacobian d(field)/d(coords) by central differences (optionally with one
    Richardson extrapolation level)."""
    a = _as_point5(p)
    if h is None:
        h = 1e-5 * (1.0 + float(np.max(np.abs(a))))
    if h <= 0:
        raise StepSizeError("finite-difference step must be positive")

    def jac(step):
        cols = []
        for k in range(5):
            e = np.zeros(5)
            e[k] = step
            cols.append((np.asarray(field(a + e)) - np.asarray(field(a - e))) / (2.0 * step))
        return np.array(cols).T  # J[i, k] = d field_i / d coord_k

    if not richardson:
        return jac(h)
    return (4.0 * jac(h / 2.0) - jac(h)) / 3.0


def lie_bracket(F, G, p, h=None, richardson=True):
    """Commutator [F, G](p) = (DG) F - (DF) G with finite-difference Jacobians."""
    a = _as_point5(p)
    JF = jacobian(F, a, h, richardson)
    JG = jacobian(G, a, h, richardson)
    return JG @ np.asarray(F(a)) - JF @ np.asarray(G(a))


def bracket_field(F, G, h=None, richardson=True):
    """The commutator as a field (each evaluation differentiates numerically)."""

    def B(p):
        return lie_bracket(F, G, p, h=h, richardson=richardson)

    return B


@dataclass(frozen=True)
class GrowthResult:
    ranks: tuple
    singular_values: tuple
    ill_conditioned: bool

    def __iter__(self):
        return iter(self.ranks)


def growth_vector(s1, s2, p, rank_tol=RANK_TOL, h_inner=None, h_outer=None):
    """Ranks of the iterated bracket spans (2, ., .) at p.

    Brackets are numerical; double brackets differentiate the (already
    numerical) first bracket, so they use a larger outer step to keep the
    inner noise from polluting the rank decision.  Singular values falling
    inside a factor-5 band around the threshold are flagged ill-conditioned.
    """
    a = _as_point5(p)
    if h_outer is None:
        h_outer = 1e-3 * (1.0 + float(np.max(np.abs(a))))
    X1, X2 = velocity_fields(s1, s2)
    B12 = bracket_field(X1, X2, h=h_inner)
    v1, v2 = X1(a), X2(a)
    v3 = B12(a)
    v4 = lie_bracket(X1, B12, a, h=h_outer)
    v5 = lie_bracket(X2, B12, a, h=h_outer)

    sigmas = []
    ranks = []
    flagged = False
    for vectors in ([v1, v2], [v1, v2, v3], [v1, v2, v3, v4, v5]):
        s = np.linalg.svd(np.array(vectors), compute_uv=False)
        cutoff = rank_tol * s[0]
        ranks.append(int(np.sum(s > cutoff)))
        if np.any((s > cutoff / 5.0) & (s < cutoff * 5.0)):
            flagged = True
        sigmas.append(tuple(float(t) for t in s))
    return GrowthResult(ranks=tuple(ranks), singular_values=tuple(sigmas), ill_conditioned=flagged)
