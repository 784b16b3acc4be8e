"""Surface catalog: orthonormal frames, Gaussian curvature, and pointwise jets.

Every family carries a rotationally adapted orthonormal frame (e1, e2) with
[e1, e2] = a1 e1 + a2 e2 and a1 = 0, so the curvature depends on one profile
coordinate only and the derivative of the curvature along e2 vanishes.  The
jet of a surface at a point collects a2, the Gaussian curvature kappa, and
the e1-derivatives of kappa up to fourth order; this is exactly the data the
quartic invariant formulas consume.

Revolution-type families use coordinates (rho, psi) with metric
(beta + alpha rho^2)^2 drho^2 + rho^2 dpsi^2 and frame
e1 = (1/(beta + alpha rho^2)) d/drho, e2 = (1/rho) d/dpsi.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SpecParseError
from .taylor import TaylorJet

REVOLUTION_MARGIN = 1e-6  # keep |beta + alpha rho^2| away from the frame degeneracy


@dataclass(frozen=True)
class SurfaceJet:
    """Pointwise frame data: a2 and the e1-derivatives of kappa.

    `killing` asserts the frame is adapted to a rotational symmetry (a1 = 0
    and the e2-derivative of kappa vanishes); every catalog family is.
    """

    a1: float
    a2: float
    kappa: float
    kappa1: float = 0.0
    kappa11: float = 0.0
    kappa111: float = 0.0
    kappa1111: float = 0.0
    killing: bool = True

    def scaled(self, s0):
        """Jet of the same point after multiplying the metric by s0^2."""
        s = abs(float(s0))
        if s == 0.0:
            raise ValueError("scale factor must be nonzero")
        return SurfaceJet(
            a1=self.a1 / s,
            a2=self.a2 / s,
            kappa=self.kappa / s**2,
            kappa1=self.kappa1 / s**3,
            kappa11=self.kappa11 / s**4,
            kappa111=self.kappa111 / s**5,
            kappa1111=self.kappa1111 / s**6,
            killing=self.killing,
        )

    def as_array(self):
        return np.array(
            [self.a1, self.a2, self.kappa, self.kappa1, self.kappa11, self.kappa111, self.kappa1111]
        )


class Surface:
    """Base class; concrete families implement jets, frames and domains."""

    kind = "surface"
    is_constant_curvature = False

    def jet(self, p) -> SurfaceJet:
        raise NotImplementedError

    def frame(self, p):
        """2x2 matrix, rows = chart components of (e1, e2)."""
        raise NotImplementedError

    def coframe(self, p):
        """2x2 matrix, rows = chart components of (sigma^1, sigma^2)."""
        return np.linalg.inv(self.frame(p).T).T

    def validate(self, p):
        """Raise DomainError if p lies outside the chart domain."""

    def scaled(self, s0) -> "Surface":
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    def profile_range(self):
        """Default (lo, hi) for the profile coordinate, used by CLI grids."""
        raise NotImplementedError

    def chart_point(self, t):
        """Chart point with profile coordinate t and the symmetry angle fixed."""
        return (float(t), 0.0)

    def profile_grid(self, n, lo=None, hi=None):
        r0, r1 = self.profile_range()
        if lo is not None:
            r0 = lo
        if hi is not None:
            r1 = hi
        return [self.chart_point(t) for t in np.linspace(r0, r1, n)]


def _check_scale(s0):
    if s0 == 0.0:
        raise ValueError("scale factor must be nonzero")


@dataclass(frozen=True)
class Plane(Surface):
    """Flat plane, Cartesian chart; `scale` multiplies the unit metric."""

    scale: float = 1.0

    kind = "plane"
    is_constant_curvature = True

    def jet(self, p):
        return SurfaceJet(a1=0.0, a2=0.0, kappa=0.0)

    def frame(self, p):
        return np.eye(2) / self.scale

    def scaled(self, s0):
        _check_scale(s0)
        return Plane(scale=self.scale * abs(s0))

    def spec_string(self):
        return "plane" if self.scale == 1.0 else f"plane:scale={self.scale:g}"

    def profile_range(self):
        return (-1.0, 1.0)


@dataclass(frozen=True)
class Sphere(Surface):
    """Round sphere of radius r, polar chart (theta, psi), theta in (0, pi)."""

    radius: float

    kind = "sphere"
    is_constant_curvature = True

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("sphere radius must be positive")

    def validate(self, p):
        theta = p[0]
        if not (1e-9 < theta < math.pi - 1e-9):
            raise DomainError(f"sphere polar chart requires 0 < theta < pi, got {theta}")

    def jet(self, p):
        self.validate(p)
        theta = p[0]
        r = self.radius
        return SurfaceJet(a1=0.0, a2=-math.cos(theta) / (r * math.sin(theta)), kappa=1.0 / r**2)

    def frame(self, p):
        self.validate(p)
        theta = p[0]
        r = self.radius
        return np.array([[1.0 / r, 0.0], [0.0, 1.0 / (r * math.sin(theta))]])

    def scaled(self, s0):
        _check_scale(s0)
        return Sphere(radius=self.radius * abs(s0))

    def spec_string(self):
        return f"sphere:r={self.radius:g}"

    def profile_range(self):
        return (0.4, math.pi - 0.4)


@dataclass(frozen=True)
class Hyperbolic(Surface):
    """Hyperbolic plane of curvature -1/r^2, polar chart (theta, psi)."""

    radius: float

    kind = "hyperbolic"
    is_constant_curvature = True

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("hyperbolic radius must be positive")

    def validate(self, p):
        theta = p[0]
        if theta < 1e-9:
            raise DomainError(f"hyperbolic polar chart requires theta > 0, got {theta}")

    def jet(self, p):
        self.validate(p)
        theta = p[0]
        r = self.radius
        return SurfaceJet(
            a1=0.0, a2=-math.cosh(theta) / (r * math.sinh(theta)), kappa=-1.0 / r**2
        )

    def frame(self, p):
        self.validate(p)
        theta = p[0]
        r = self.radius
        return np.array([[1.0 / r, 0.0], [0.0, 1.0 / (r * math.sinh(theta))]])

    def scaled(self, s0):
        _check_scale(s0)
        return Hyperbolic(radius=self.radius * abs(s0))

    def spec_string(self):
        return f"hyperbolic:r={self.radius:g}"

    def profile_range(self):
        return (0.3, 2.0)


class _RevolutionBase(Surface):
    """Shared machinery for metrics (beta + alpha rho^2)^2 drho^2 + rho^2 dpsi^2.

    Subclasses provide `alpha` and `beta` (fields or properties)."""

    def h(self, rho):
        return self.beta + self.alpha * rho * rho

    def validate(self, p):
        rho = p[0] if np.ndim(p) else float(p)
        if rho <= 0:
            raise DomainError(f"revolution chart requires rho > 0, got {rho}")
        if abs(self.h(rho)) < REVOLUTION_MARGIN:
            raise DomainError(
                f"frame degenerates where beta + alpha rho^2 = 0 (rho = {rho})"
            )

    def jet(self, p):
        self.validate(p)
        rho = p[0] if np.ndim(p) else float(p)
        # exact Taylor arithmetic: kappa = 2 alpha / h^3 expanded to 4th order,
        # then the e1-derivative chain f -> f'(rho)/h applied four times
        r = TaylorJet.variable(rho, 4)
        h = self.beta + self.alpha * r * r
        kappa = 2.0 * self.alpha / h**3
        return _jet_from_series(kappa, h, rho, a2=-1.0 / (rho * self.h(rho)))

    def frame(self, p):
        self.validate(p)
        rho = p[0]
        return np.array([[1.0 / self.h(rho), 0.0], [0.0, 1.0 / rho]])

    def profile_range(self):
        return (0.5, 2.0)


def _jet_from_series(kappa_series, h_series, rho, a2):
    derivs = [kappa_series.value]
    f = kappa_series
    for _ in range(4):
        f = f.derivative() / h_series.truncate(f.order - 1)
        derivs.append(f.value)
    return SurfaceJet(
        a1=0.0,
        a2=a2,
        kappa=derivs[0],
        kappa1=derivs[1],
        kappa11=derivs[2],
        kappa111=derivs[3],
        kappa1111=derivs[4],
    )


@dataclass(frozen=True)
class RevolutionProfile(_RevolutionBase):
    """General revolution family; gamma is the chart constant of the profile
    x = alpha rho^2 / 2 + beta log rho + gamma and does not enter the metric."""

    alpha: float
    beta: float
    gamma: float = 0.0

    kind = "profile"

    def __post_init__(self):
        if self.alpha == 0.0:
            raise ValueError("alpha = 0 gives a flat metric and is excluded")

    def scaled(self, s0):
        _check_scale(s0)
        return RevolutionProfile(self.alpha / s0**2, self.beta, self.gamma)

    def spec_string(self):
        return f"profile:alpha={self.alpha:g},beta={self.beta:g}"


@dataclass(frozen=True)
class G2Family(_RevolutionBase):
    """The three normal-form metrics (rho^2 + eps)^2 drho^2 + rho^2 dpsi^2."""

    eps: int

    kind = "g2"

    def __post_init__(self):
        if self.eps not in (-1, 0, 1):
            raise ValueError("eps must be -1, 0 or +1")

    @property
    def alpha(self):
        return 1.0

    @property
    def beta(self):
        return float(self.eps)

    def validate(self, p):
        rho = p[0] if np.ndim(p) else float(p)
        if self.eps == -1 and rho <= 1.0:
            raise DomainError(
                f"the eps=-1 family is restricted to rho > 1 (frame degenerates at 1), got {rho}"
            )
        super().validate(p)

    def scaled(self, s0):
        _check_scale(s0)
        return RevolutionProfile(1.0 / s0**2, float(self.eps))

    def spec_string(self):
        return f"g2:eps={self.eps}"

    def profile_range(self):
        if self.eps == -1:
            return (1.2, 3.0)
        if self.eps == 0:
            return (0.5, 3.0)
        return (0.1, 2.0)


class CustomRevolution(_RevolutionBase):
    """Revolution surface with a user-supplied metric factor h(rho).

    `h_func` must accept TaylorJet arguments (plain arithmetic plus the
    elementary functions TaylorJet provides); the order-4 jet of the
    curvature kappa = h'/(rho h^3) is evaluated through it.
    """

    kind = "custom"

    def __init__(self, h_func, label="custom"):
        self._h = h_func
        self.label = label

    def h(self, rho):
        out = self._h(TaylorJet.constant(float(rho), 0))
        return out.value if isinstance(out, TaylorJet) else float(out)

    def jet(self, p):
        rho = p[0] if np.ndim(p) else float(p)
        if rho <= 0:
            raise DomainError(f"revolution chart requires rho > 0, got {rho}")
        r = TaylorJet.variable(rho, 5)
        h = self._h(r)
        if not isinstance(h, TaylorJet):
            h = TaylorJet.constant(float(h), 5)
        if abs(h.value) < REVOLUTION_MARGIN:
            raise DomainError(f"frame degenerates where h = 0 (rho = {rho})")
        kappa = h.derivative() / (r * h**3).truncate(4)
        return _jet_from_series(kappa, h.truncate(4), rho, a2=-1.0 / (rho * h.value))

    def spec_string(self):
        return f"custom:{self.label}"


def g2_family(eps):
    return G2Family(int(eps))


def jet_at(surface, p):
    """Full pointwise jet of a catalog surface (op-level alias)."""
    return surface.jet(p)


def scale_surface(surface, s0):
    """Family with metric multiplied by s0^2; jets transform accordingly."""
    return surface.scaled(s0)


def gaussian_curvature_profile(alpha, beta, rho):
    """Gaussian curvature 2 alpha / (beta + alpha rho^2)^3 of the profile metric."""
    h = beta + alpha * rho * rho
    if h == 0.0:
        raise DomainError("curvature is singular where beta + alpha rho^2 = 0")
    return 2.0 * alpha / h**3


def profile_ode_residual(rho, d1, d2, d3):
    """Residual of the third-order profile equation characterizing the
    surfaces whose rolling on the plane has maximal symmetry; arguments are
    rho and its first three derivatives with respect to the chart
    coordinate x in which the metric is rho(x)^2 (dx^2 + dpsi^2)."""
    return d3 * d1 * rho**2 - 3.0 * d2**2 * rho**2 + d2 * d1**2 * rho + d1**4


def reciprocal_ode_residual(x1, x2, x3, rho):
    """Residual of the linear reciprocal form x''' rho^2 + x'' rho - x' = 0,
    obtained from the profile equation by swapping dependent and independent
    variables; its general solution is x = alpha rho^2/2 + beta log rho + gamma."""
    return x3 * rho**2 + x2 * rho - x1


def constant_curvature_surface(lam):
    """Canonical catalog surface of constant curvature `lam`."""
    if lam == 0.0:
        return Plane()
    if lam > 0.0:
        return Sphere(radius=1.0 / math.sqrt(lam))
    return Hyperbolic(radius=1.0 / math.sqrt(-lam))


_SPEC_RE = re.compile(r"^(?P<kind>[a-zA-Z0-9_]+)(?::(?P<args>.*))?$")

_SPEC_KEYS = {
    "plane": (),
    "sphere": ("r",),
    "hyperbolic": ("r",),
    "profile": ("alpha", "beta", "gamma"),
    "g2": ("eps",),
}


def parse_surface(spec):
    """Parse a surface spec string.

    Grammar: ``plane``, ``sphere:r=<v>``, ``hyperbolic:r=<v>``,
    ``profile:alpha=<v>,beta=<v>``, ``g2:eps=<-1|0|1>``.
    """
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise SpecParseError(f"unparseable surface spec {spec!r}", position=0)
    kind = m.group("kind")
    if kind not in _SPEC_KEYS:
        raise SpecParseError(f"unknown surface family {kind!r} in {spec!r}", position=0)
    allowed = _SPEC_KEYS[kind]
    kv = {}
    args = m.group("args")
    if args:
        pos = len(kind) + 1
        for item in args.split(","):
            if "=" not in item:
                raise SpecParseError(
                    f"expected key=value at position {pos} in {spec!r}", position=pos
                )
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in allowed:
                raise SpecParseError(
                    f"unknown key {key!r} for family {kind!r} at position {pos} in {spec!r}",
                    position=pos,
                )
            try:
                kv[key] = float(val)
            except ValueError:
                raise SpecParseError(
                    f"bad numeric value {val!r} at position {pos} in {spec!r}", position=pos
                ) from None
            pos += len(item) + 1
    try:
        if kind == "plane":
            return Plane()
        if kind == "sphere":
            return Sphere(radius=kv["r"])
        if kind == "hyperbolic":
            return Hyperbolic(radius=kv["r"])
        if kind == "profile":
            return RevolutionProfile(kv["alpha"], kv["beta"], kv.get("gamma", 0.0))
        eps = kv["eps"]
        if eps != int(eps):
            raise ValueError("eps must be an integer")
        return G2Family(int(eps))
    except KeyError as exc:
        raise SpecParseError(f"missing key {exc.args[0]!r} in {spec!r}", position=0) from None
    except ValueError as exc:
        raise SpecParseError(f"invalid parameters in {spec!r}: {exc}", position=0) from None
