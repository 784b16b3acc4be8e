"""Kinematic integration of admissible rolling motions.

An admissible motion is a curve tangent to the velocity distribution:
ydot = c1 X1 + c2 X2 with time-dependent controls.  Integration is a fixed
step classical 4th-order scheme; the no-slip and no-twist diagnostics then
measure the constraint residuals of the sampled curve with high-order
finite differences, so the observed residuals converge at the integrator's
order instead of being swamped by measurement error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distribution5 import ConfigPoint, _as_point5, velocity_fields
from .errors import DomainError, SpecParseError, StepSizeError
from .finitediff import cumulative_integral, sampled_derivative


@dataclass(frozen=True)
class ControlCurve:
    """Time-sampled controls (c1, c2); interpolation is piecewise linear."""

    times: np.ndarray
    values: np.ndarray  # shape (n, 2)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.shape != (len(t), 2):
            raise ValueError("controls need matching times (n,) and values (n, 2)")
        if len(t) >= 2 and np.any(np.diff(t) <= 0):
            raise ValueError("control times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, c1, c2, t_end=1.0):
        return cls(times=np.array([0.0, t_end]), values=np.array([[c1, c2], [c1, c2]]))

    @classmethod
    def from_file(cls, path):
        """Rows `t, c1, c2`; comma or whitespace delimited, '#' comments."""
        times = []
        values = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                parts = [s for s in line.replace(",", " ").split() if s]
                if len(parts) != 3:
                    raise SpecParseError(
                        f"control file {path}: line {lineno}: expected 't, c1, c2', got {raw!r}",
                        position=lineno,
                    )
                try:
                    t, c1, c2 = (float(s) for s in parts)
                except ValueError:
                    raise SpecParseError(
                        f"control file {path}: line {lineno}: non-numeric entry in {raw!r}",
                        position=lineno,
                    ) from None
                times.append(t)
                values.append((c1, c2))
        if not times:
            raise SpecParseError(f"control file {path}: no data rows", position=0)
        return cls(times=np.array(times), values=np.array(values))

    def __call__(self, t):
        return np.array(
            [
                np.interp(t, self.times, self.values[:, 0]),
                np.interp(t, self.times, self.values[:, 1]),
            ]
        )


@dataclass(frozen=True)
class Trajectory:
    """Time-sampled admissible motion; phi is kept continuous (unwrapped)."""

    times: np.ndarray
    points: np.ndarray  # shape (n, 5)
    control: ControlCurve | None
    dt: float
    order: int = 4

    def __len__(self):
        return len(self.times)

    def config_points(self):
        return [ConfigPoint.from_array(row) for row in self.points]

    @property
    def phi_winding(self):
        """Total change of the unwrapped fiber angle along the motion."""
        return float(self.points[-1, 4] - self.points[0, 4])


def integrate_fields(f1, f2, start, ctrl, dt, t_end, validate=None):
    """Fixed-step RK4 for ydot = c1(t) f1(y) + c2(t) f2(y).

    `validate`, when given, is called on each accepted sample; a DomainError
    aborts with the partial trajectory attached to the exception.
    """
    if dt <= 0:
        raise StepSizeError("dt must be positive")
    y = _as_point5(start).copy()
    n_steps = max(1, int(round(t_end / dt)))
    dt = t_end / n_steps  # land on t_end exactly
    times = [0.0]
    points = [y.copy()]

    def f(t, state):
        c = ctrl(t)
        return c[0] * np.asarray(f1(state)) + c[1] * np.asarray(f2(state))

    t = 0.0
    for k in range(n_steps):
        try:
            k1 = f(t, y)
            k2 = f(t + dt / 2.0, y + dt / 2.0 * k1)
            k3 = f(t + dt / 2.0, y + dt / 2.0 * k2)
            k4 = f(t + dt, y + dt * k3)
            y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t = (k + 1) * dt
            if validate is not None:
                validate(y)
        except DomainError as exc:
            partial = Trajectory(
                times=np.array(times), points=np.array(points), control=ctrl, dt=dt
            )
            exc.last_valid = partial
            raise
        times.append(t)
        points.append(y.copy())
    return Trajectory(times=np.array(times), points=np.array(points), control=ctrl, dt=dt)


def integrate(s1, s2, start, ctrl, dt, t_end, normalize_speed=False):
    """Integrate an admissible rolling motion of s1 on s2.

    With `normalize_speed`, the controls are rescaled pointwise to unit
    norm so time is arclength on the first surface.
    """
    f1, f2 = velocity_fields(s1, s2)
    if normalize_speed:
        base = ctrl

        def scaled(t):
            c = base(t)
            n = float(np.hypot(c[0], c[1]))
            return c / n if n > 0 else c

        control = scaled
    else:
        control = ctrl

    def validate(y):
        s1.validate((y[0], y[1]))
        s2.validate((y[2], y[3]))

    traj = integrate_fields(f1, f2, start, control, dt, t_end, validate=validate)
    return traj


def _frame_velocities(traj, s1, s2, fd_order=6):
    """Frame components of the sampled contact-curve velocities.

    Returns (v1, v2): arrays (n, 2) with the orthonormal-frame components of
    the chart velocities on each surface, measured by high-order finite
    differences of the samples.
    """
    dt = traj.dt
    vel = sampled_derivative(traj.points, dt, order=min(fd_order, len(traj) - 1))
    n = len(traj)
    v1 = np.empty((n, 2))
    v2 = np.empty((n, 2))
    for k, (p, dp) in enumerate(zip(traj.points, vel)):
        F1 = s1.frame((p[0], p[1]))
        F2 = s2.frame((p[2], p[3]))
        v1[k] = np.linalg.solve(F1.T, dp[0:2])
        v2[k] = np.linalg.solve(F2.T, dp[2:4])
    return v1, v2


def _rotation(phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


def no_slip_residual(traj, s1, s2):
    """Max norm of A_phi(velocity on surface 1) - (velocity on surface 2)."""
    v1, v2 = _frame_velocities(traj, s1, s2)
    worst = 0.0
    for k in range(len(traj)):
        rotated = _rotation(traj.points[k, 4]) @ v1[k]
        worst = max(worst, float(np.linalg.norm(rotated - v2[k])))
    return worst


def no_twist_residual(traj, s1, s2, v0=(1.0, 0.0)):
    """Parallel-transport v0 along the first contact curve, rotate by A_phi,
    and measure the covariant derivative of the image along the second.

    The transport equation vdot = gamma1(t) J v (J the rotation generator)
    integrates in closed form to a rotation by the time integral of gamma1,
    which is evaluated with high-order quadrature of the sampled data.
    """
    v1, v2 = _frame_velocities(traj, s1, s2)
    n = len(traj)
    gamma1 = np.empty(n)
    gamma2 = np.empty(n)
    for k, p in enumerate(traj.points):
        j1 = s1.jet((p[0], p[1]))
        j2 = s2.jet((p[2], p[3]))
        gamma1[k] = j1.a1 * v1[k, 0] + j1.a2 * v1[k, 1]
        gamma2[k] = j2.a1 * v2[k, 0] + j2.a2 * v2[k, 1]
    theta = cumulative_integral(gamma1, traj.dt)
    v = np.einsum("kij,j->ki", np.array([_rotation(t) for t in theta]), np.asarray(v0, float))
    w = np.einsum("kij,kj->ki", np.array([_rotation(p[4]) for p in traj.points]), v)
    wdot = sampled_derivative(w, traj.dt, order=min(6, n - 1))
    J = np.array([[0.0, -1.0], [1.0, 0.0]])
    resid = wdot - gamma2[:, None] * (w @ J.T)
    return float(np.max(np.linalg.norm(resid, axis=1)))


def contact_arclengths(traj, s1, s2):
    """Arc lengths of the two contact curves in their own metrics."""
    v1, v2 = _frame_velocities(traj, s1, s2)
    speeds1 = np.linalg.norm(v1, axis=1)
    speeds2 = np.linalg.norm(v2, axis=1)
    L1 = cumulative_integral(speeds1, traj.dt)[-1]
    L2 = cumulative_integral(speeds2, traj.dt)[-1]
    return float(L1), float(L2)


def export_trajectory(traj, path_or_handle):
    """Write `t, x, y, u, v, phi, c1, c2` rows (phi unwrapped)."""
    close = False
    if isinstance(path_or_handle, (str, bytes)):
        fh = open(path_or_handle, "w", encoding="utf-8")
        close = True
    else:
        fh = path_or_handle
    try:
        fh.write("# t,x,y,u,v,phi,c1,c2\n")
        for t, p in zip(traj.times, traj.points):
            c = traj.control(t) if traj.control is not None else (0.0, 0.0)
            row = [t, p[0], p[1], p[2], p[3], p[4], c[0], c[1]]
            fh.write(",".join(f"{val:.17g}" for val in row) + "\n")
    finally:
        if close:
            fh.close()
