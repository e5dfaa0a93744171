"""Closed-form n=2 Cauchy evolution and an independent finite-difference oracle.

evolve_point evaluates the closed-form kernel solution of

    -phi_tt + phi_xx + 8 phi / (1 + x^2 - t^2)^2 = 0

from initial position data u0 and velocity data v0 given at t = a.  The two
kernel integrals are taken exactly as oriented in the closed form, from
w = x + (t-a) to w = x - (t-a).  fd_reference is a leapfrog solver used only
as an oracle; it shares no code path with the kernel evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (CFLViolation, DomainError, GridTooSmall, KernelPole,
                     SingularRegion)
from .quadrature import QuadratureSpec, adaptive_gauss
from .ring import RhoExpr

EPS_SING = 1e-3


@dataclass(frozen=True)
class InitialData:
    """Cauchy data on the slice t = a: phi = u0(w), dphi/dt = v0(w)."""

    a: float
    u0: Callable[[np.ndarray], np.ndarray]
    v0: Callable[[np.ndarray], np.ndarray]
    expr: Optional[RhoExpr] = field(default=None, compare=False)

    @classmethod
    def from_rho_expr(cls, expr, a=0.0):
        """Restrict an exact dim-2 solution to t = a; v0 from its exact t-derivative."""
        if expr.dim != 2:
            raise DomainError(f"Cauchy data needs dim 2, got {expr.dim}")
        dt_expr = expr.diff(0)

        def u0(w):
            w = np.atleast_1d(np.asarray(w, dtype=float))
            pts = np.column_stack([np.full(w.shape, a), w])
            return expr.eval_points(pts)

        def v0(w):
            w = np.atleast_1d(np.asarray(w, dtype=float))
            pts = np.column_stack([np.full(w.shape, a), w])
            return dt_expr.eval_points(pts)

        return cls(a=float(a), u0=u0, v0=v0, expr=expr)

    @classmethod
    def from_samples(cls, w, u, v, a=0.0):
        """Natural cubic-spline interpolation of tabulated data.

        Evaluation outside the tabulated range raises DomainError so that
        quadrature abscissae can never silently extrapolate.
        """
        w = np.asarray(w, dtype=float)
        if w.size < 4:
            raise DomainError("need at least 4 samples for cubic interpolation")
        u_spline = CubicSpline(w, np.asarray(u, dtype=float), bc_type="natural")
        v_spline = CubicSpline(w, np.asarray(v, dtype=float), bc_type="natural")
        lo, hi = float(w[0]), float(w[-1])

        def guard(spline):
            def f(q):
                q = np.atleast_1d(np.asarray(q, dtype=float))
                if np.any(q < lo) or np.any(q > hi):
                    raise DomainError(
                        f"initial data requested outside tabulated range [{lo}, {hi}]")
                return spline(q)

            return f

        return cls(a=float(a), u0=guard(u_spline), v0=guard(v_spline))


@dataclass(frozen=True)
class Grid2D:
    x_min: float
    x_max: float
    nx: int
    t_min: float
    t_max: float
    nt: int

    def __post_init__(self):
        if self.nx < 2 or self.nt < 2:
            raise GridTooSmall(f"grid needs nx, nt >= 2, got {self.nx}x{self.nt}")
        if self.x_max <= self.x_min or self.t_max <= self.t_min:
            raise DomainError("grid bounds must be increasing")

    def xs(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ts(self):
        return np.linspace(self.t_min, self.t_max, self.nt)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dt(self):
        return (self.t_max - self.t_min) / (self.nt - 1)

    def check_singularity(self, eps_sing=EPS_SING):
        worst_x = min(abs(self.x_min), abs(self.x_max))
        if self.x_min <= 0.0 <= self.x_max:
            worst_x = 0.0
        worst_t = max(abs(self.t_min), abs(self.t_max))
        margin = 1.0 + worst_x ** 2 - worst_t ** 2
        if margin < eps_sing:
            raise SingularRegion(
                f"grid reaches 1 + x^2 - t^2 = {margin} < {eps_sing}")


@dataclass(frozen=True)
class Field2D:
    grid: Grid2D
    values: np.ndarray  # shape (nx, nt); values[i, j] = phi(x_i, t_j)

    def __post_init__(self):
        expected = (self.grid.nx, self.grid.nt)
        if self.values.shape != expected:
            raise DomainError(
                f"values shape {self.values.shape} does not match grid {expected}")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("field contains non-finite values")


def _check_point(x, t, eps_sing=EPS_SING):
    margin = 1.0 + x * x - t * t
    if margin < eps_sing:
        raise SingularRegion(
            f"point (x={x}, t={t}) has 1 + x^2 - t^2 = {margin} < {eps_sing}")
    return margin


def _check_kernel_pole(a, w_lo, w_hi):
    if abs(a) < 1.0:
        return  # 1 - a^2 + w^2 >= 1 - a^2 > 0 everywhere
    pole = math.sqrt(a * a - 1.0)
    lo, hi = min(w_lo, w_hi), max(w_lo, w_hi)
    for w_star in (pole, -pole):
        if lo <= w_star <= hi:
            raise KernelPole(
                f"kernel denominator 1 - a^2 + w^2 vanishes at w = {w_star}")


def evolve_point(d, x, t, q=QuadratureSpec()):
    """Closed-form solution value phi(x, t) for initial data at t = a.

    Depends only on data in [x - (t-a), x + (t-a)]; the quadrature never
    samples outside that interval.
    """
    x, t = float(x), float(t)
    margin = _check_point(x, t)
    a = d.a
    delta = t - a
    boundary = 0.5 * float(d.u0(np.array([x - delta]))[0]
                           + d.u0(np.array([x + delta]))[0])
    if delta == 0.0:
        return boundary
    w_lo, w_hi = x + delta, x - delta  # oriented exactly as in the closed form
    _check_kernel_pole(a, w_lo, w_hi)

    def k1_integrand(w):
        den = (1.0 - a * a + w * w)
        num = t * (1.0 + a * a + w * w) + a * (x * x - 2.0 * w * x - t * t - 1.0)
        return num / (margin * den * den) * d.u0(w)

    def k2_integrand(w):
        den = 1.0 - a * a + w * w
        num = (1.0 - x * x + t * t) * (1.0 + a * a - w * w) - 4.0 * a * t + 4.0 * w * x
        return num / (margin * den) * d.v0(w)

    i1 = adaptive_gauss(k1_integrand, w_lo, w_hi, q)
    i2 = adaptive_gauss(k2_integrand, w_lo, w_hi, q)
    return boundary - 2.0 * i1 - 0.5 * i2


def evolve_grid(d, g, q=QuadratureSpec()):
    """Field2D of evolve_point values over the grid; deterministic sweep."""
    g.check_singularity()
    xs, ts = g.xs(), g.ts()
    values = np.empty((g.nx, g.nt))
    for j, t in enumerate(ts):
        for i, x in enumerate(xs):
            try:
                values[i, j] = evolve_point(d, x, t, q)
            except SingularRegion as exc:
                raise SingularRegion(f"node (x={x}, t={t}): {exc}") from exc
    return Field2D(grid=g, values=values)


def _potential(xs, t):
    return 8.0 / (1.0 + xs ** 2 - t * t) ** 2


def fd_reference(d, g, cfl=0.9, refine=1):
    """Independent leapfrog reference solution, restricted back to grid g.

    The spatial domain is widened so the numerical domain of dependence of
    the requested region never touches the artificial boundaries; `refine`
    divides the spatial step for convergence studies.
    """
    if cfl > 0.95 or cfl <= 0.0:
        raise CFLViolation(f"cfl must be in (0, 0.95], got {cfl}")
    if abs(g.t_min - d.a) > 1e-12:
        raise DomainError(
            f"fd_reference must start at the data slice t = {d.a}, grid starts at {g.t_min}")
    g.check_singularity()
    dx = g.dx / refine
    span = g.t_max - d.a
    n_pad = int(math.ceil(span / (cfl * dx))) + 2
    nx_ext = (g.nx - 1) * refine + 1 + 2 * n_pad
    xs = g.x_min - n_pad * dx + dx * np.arange(nx_ext)
    # substep so that stored slices land exactly on the requested t nodes
    m_sub = max(1, int(math.ceil(g.dt / (cfl * dx))))
    dt = g.dt / m_sub

    margin = 1.0 + xs ** 2 - g.t_max ** 2
    if np.min(margin) < EPS_SING:
        raise SingularRegion("widened FD domain reaches the singular set")

    u0 = np.asarray(d.u0(xs), dtype=float)
    v0 = np.asarray(d.v0(xs), dtype=float)
    out = np.empty((g.nx, g.nt))
    sel = slice(n_pad, n_pad + (g.nx - 1) * refine + 1, refine)
    out[:, 0] = u0[sel]

    lap = np.zeros_like(xs)
    prev = u0.copy()
    lap[1:-1] = (u0[2:] - 2.0 * u0[1:-1] + u0[:-2]) / (dx * dx)
    cur = u0 + dt * v0 + 0.5 * dt * dt * (lap + _potential(xs, d.a) * u0)
    t_now = d.a + dt
    step = 1
    for j in range(1, g.nt):
        target = j * m_sub
        while step < target:
            lap[1:-1] = (cur[2:] - 2.0 * cur[1:-1] + cur[:-2]) / (dx * dx)
            nxt = 2.0 * cur - prev + dt * dt * (lap + _potential(xs, t_now) * cur)
            nxt[0], nxt[-1] = cur[0], cur[-1]
            prev, cur = cur, nxt
            step += 1
            t_now = d.a + step * dt
        out[:, j] = cur[sel]
    return Field2D(grid=g, values=out)


def pde_residual_fd(f):
    """Interior residual -Dtt + Dxx + 8/(1+x^2-t^2)^2 by central differences.

    Returns a Field2D on the interior sub-grid; second-order accurate, so the
    max residual of a smooth solution decays like h^2.
    """
    g = f.grid
    if g.nx < 5 or g.nt < 5:
        raise GridTooSmall(f"residual stencil needs nx, nt >= 5, got {g.nx}x{g.nt}")
    xs, ts = g.xs(), g.ts()
    vals = f.values
    dxx = (vals[2:, 1:-1] - 2.0 * vals[1:-1, 1:-1] + vals[:-2, 1:-1]) / g.dx ** 2
    dtt = (vals[1:-1, 2:] - 2.0 * vals[1:-1, 1:-1] + vals[1:-1, :-2]) / g.dt ** 2
    pot = 8.0 / (1.0 + xs[1:-1, None] ** 2 - ts[None, 1:-1] ** 2) ** 2
    res = -dtt + dxx + pot * vals[1:-1, 1:-1]
    inner = Grid2D(x_min=xs[1], x_max=xs[-2], nx=g.nx - 2,
                   t_min=ts[1], t_max=ts[-2], nt=g.nt - 2)
    return Field2D(grid=inner, values=res)


def initial_condition_check(d, q=QuadratureSpec(), xs=None, dt_step=1e-4):
    """(max |phi(., a) - u0|, max |d/dt phi(., a) - v0|) over sample positions.

    The velocity is taken by a one-sided 4th-order finite difference of
    evolve_point in t.
    """
    if xs is None:
        xs = np.linspace(-1.0, 1.0, 21)
    xs = np.asarray(xs, dtype=float)
    pos_err = 0.0
    vel_err = 0.0
    weights = (-25.0, 48.0, -36.0, 16.0, -3.0)
    for x in xs:
        u_exact = float(d.u0(np.array([x]))[0])
        v_exact = float(d.v0(np.array([x]))[0])
        pos_err = max(pos_err, abs(evolve_point(d, x, d.a, q) - u_exact))
        samples = [evolve_point(d, x, d.a + i * dt_step, q) for i in range(5)]
        vel = sum(w * s for w, s in zip(weights, samples)) / (12.0 * dt_step)
        vel_err = max(vel_err, abs(vel - v_exact))
    return pos_err, vel_err
