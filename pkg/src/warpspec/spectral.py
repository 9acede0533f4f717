"""Radial eigenvalue problem for ``-Laplacian + c R`` on warped products.

The singular problem on ``(0, T)`` is truncated to ``[eps, T - eps]`` with
Dirichlet ends and discretized by a three-point flux scheme in the weight
``W = phi^(n-1)``:

    A u ~ -(W u')' + q W u,   M = diag(h W)

with ``q = c R + l(l+n-2)/phi^2 - mu``.  The pencil ``(A, M)`` is symmetric
tridiagonal / diagonal, so ``M^(-1/2) A M^(-1/2)`` is a symmetric Jacobi
matrix with the same spectrum.  Results are extrapolated in the mesh width
(Richardson, order 2) and then in ``eps`` (geometric tail).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .closedform import SpectralParams, mu_function
from .errors import InvalidInput, NumericalFailure
from .geometry import WarpedMetric, scalar_curvature
from .profile import RadialProfile
from .tridiag import inverse_iteration, lowest_eigenvalue

MuSource = Union[None, float, Callable, RadialProfile]

# relative size below which eigenvalue differences are treated as round-off
NOISE = 1e-11


@dataclass(frozen=True, eq=False)
class Discretization:
    metric: WarpedMetric
    params: SpectralParams
    ell: int
    N: int
    eps: float
    nodes: np.ndarray
    h: float
    weight: np.ndarray
    potential: np.ndarray
    a_diag: np.ndarray
    a_off: np.ndarray
    mass: np.ndarray

    def quotient(self, vec) -> float:
        """Discrete Rayleigh quotient ``v.A v / v.M v``."""
        v = np.asarray(vec, dtype=float)
        denom = float(np.sum(self.mass * v**2))
        if denom <= 0:
            raise InvalidInput("zero vector has no Rayleigh quotient")
        av = self.a_diag * v
        av[:-1] += self.a_off * v[1:]
        av[1:] += self.a_off * v[:-1]
        return float(v @ av) / denom

    def standard_form(self):
        """Diagonal and off-diagonal of ``M^(-1/2) A M^(-1/2)``."""
        s = 1.0 / np.sqrt(self.mass)
        return self.a_diag * s * s, self.a_off * s[:-1] * s[1:]

    def a_norm(self) -> float:
        return float(np.max(np.abs(self.a_diag) + np.r_[np.abs(self.a_off), 0.0] + np.r_[0.0, np.abs(self.a_off)]))


@dataclass(frozen=True, eq=False)
class EigenSolution:
    eigenvalue: float
    nodes: np.ndarray
    vector: np.ndarray
    mass: np.ndarray
    residual: float
    error_bar: float = math.nan
    diagnostics: dict = field(default_factory=dict)

    def weighted_l2_error(self, func: Callable) -> float:
        """Relative weighted L2 distance to ``func`` after matching normalization."""
        ref = np.asarray(func(self.nodes), dtype=float)
        ref = ref / math.sqrt(float(np.sum(self.mass * ref**2)))
        u = self.vector
        return math.sqrt(float(np.sum(self.mass * (u - ref) ** 2)))


@dataclass(frozen=True)
class Schedule:
    """Grid levels ``Ns`` (interior node counts) and truncations as fractions of T."""

    Ns: tuple = (256, 512, 1024, 2048)
    eps_fracs: tuple = (1 / 50, 1 / 100, 1 / 200)

    def __post_init__(self):
        if len(self.Ns) < 3:
            raise InvalidInput("schedule needs at least 3 grid levels")
        if len(self.eps_fracs) < 1:
            raise InvalidInput("schedule needs at least one truncation")
        if list(self.Ns) != sorted(set(self.Ns)) or min(self.Ns) < 16:
            raise InvalidInput("grid levels must be increasing and >= 16")
        if list(self.eps_fracs) != sorted(set(self.eps_fracs), reverse=True) or not (0 < min(self.eps_fracs) and max(self.eps_fracs) < 0.25):
            raise InvalidInput("truncations must be decreasing fractions in (0, 1/4)")


def _mu_at(mu: MuSource, metric: WarpedMetric, kappa: float, t: np.ndarray) -> np.ndarray:
    if mu is None:
        return np.zeros_like(t)
    if isinstance(mu, str) and mu == "profile":
        return mu_function(metric, kappa)(t)
    if isinstance(mu, RadialProfile):
        if t[0] < mu.grid[0] or t[-1] > mu.grid[-1]:
            raise InvalidInput("mu profile does not cover the truncated domain")
        return CubicSpline(mu.grid, mu.values)(t)
    if callable(mu):
        return np.asarray(mu(t), dtype=float) * np.ones_like(t)
    return np.full_like(t, float(mu))


def assemble(
    metric: WarpedMetric,
    params: SpectralParams,
    mu: MuSource = None,
    ell: int = 0,
    N: int = 512,
    eps: Optional[float] = None,
) -> Discretization:
    """Symmetric pencil for the sector-``ell`` problem on ``[eps, T - eps]``."""
    if params.kappa == 0:
        raise InvalidInput("kappa = 0 is the pointwise mode; use scalar_inf")
    T = metric.T
    eps = T / 100 if eps is None else float(eps)
    if not 0 < eps < T / 4:
        raise InvalidInput(f"truncation eps must lie in (0, T/4), got {eps}")
    if N < 16:
        raise InvalidInput("need at least 16 interior nodes")
    if ell < 0 or int(ell) != ell:
        raise InvalidInput("angular index must be a non-negative integer")
    n = metric.n
    x = np.linspace(eps, T - eps, N + 2)
    h = x[1] - x[0]
    nodes = x[1:-1]
    phi = metric.phi(nodes)
    weight = phi ** (n - 1)
    w_half = metric.phi(0.5 * (x[:-1] + x[1:])) ** (n - 1)
    potential = params.c * scalar_curvature(metric, nodes) + ell * (ell + n - 2) / phi**2
    potential = potential - _mu_at(mu, metric, params.kappa, nodes)
    if not (np.all(np.isfinite(potential)) and np.all(weight > 0) and np.all(w_half > 0)):
        raise InvalidInput("potential or weight is not finite and positive on the truncated grid")
    a_diag = (w_half[:-1] + w_half[1:]) / h + h * potential * weight
    a_off = -w_half[1:-1] / h
    return Discretization(metric, params, int(ell), int(N), eps, nodes, h, weight, potential, a_diag, a_off, h * weight)


def first_eigen(disc: Discretization, max_iter: int = 6) -> EigenSolution:
    """Smallest eigenpair of the pencil, vector normalized in ``M`` and positive."""
    d, e = disc.standard_form()
    lam0 = lowest_eigenvalue(d, e)
    y, rq, _ = inverse_iteration(d, e, lam0, max_iter=max_iter)
    u = y / np.sqrt(disc.mass)
    au = disc.a_diag * u
    au[:-1] += disc.a_off * u[1:]
    au[1:] += disc.a_off * u[:-1]
    resid = float(np.linalg.norm(au - rq * disc.mass * u))
    if not resid < 1e-10 * disc.a_norm():
        raise NumericalFailure(f"pencil residual {resid:.3g} too large")
    flips = int(np.count_nonzero(np.diff(np.sign(u[np.abs(u) > 1e-300])) != 0))
    return EigenSolution(
        eigenvalue=rq,
        nodes=disc.nodes,
        vector=u,
        mass=disc.mass,
        residual=resid,
        diagnostics={"N": disc.N, "eps": disc.eps, "ell": disc.ell, "bisection": lam0, "sign_changes": flips},
    )


def observed_order(values: Sequence[float], hs: Sequence[float]) -> float:
    """Convergence order from three consecutive levels with arbitrary mesh ratios."""
    l1, l2, l3 = values
    h1, h2, h3 = hs
    d12, d23 = l1 - l2, l2 - l3
    if d12 == 0 or d23 == 0 or (d12 > 0) != (d23 > 0):
        return math.nan
    target = d12 / d23

    def g(p):
        return (h1**p - h2**p) / (h2**p - h3**p) - target

    try:
        return brentq(g, 0.05, 12.0)
    except ValueError:
        return math.nan


def richardson(coarse: float, fine: float, h_coarse: float, h_fine: float, order: float = 2.0) -> float:
    r = (h_coarse / h_fine) ** order
    return fine + (fine - coarse) / (r - 1.0)


def _check_monotone(diffs, noise, what):
    sig = [d for d in diffs if abs(d) > noise]
    for d0, d1 in zip(sig, sig[1:]):
        if (d0 > 0) != (d1 > 0) or abs(d1) > abs(d0):
            raise NumericalFailure(f"non-monotone convergence in {what}: differences {diffs}")


def lambda_c(
    metric: WarpedMetric,
    params: SpectralParams,
    mu: MuSource = None,
    schedule: Schedule = Schedule(),
    sector_check: bool = True,
    max_iter: int = 6,
) -> EigenSolution:
    """Extrapolated first radial eigenvalue (the c-spectral constant, or the
    mu-shifted constant when ``mu`` is given).

    ``mu`` may be a number, a callable of ``t``, a :class:`RadialProfile` or
    the string ``"profile"`` for the relation-defined ``mu`` of the metric.
    """
    T = metric.T
    Ns = list(schedule.Ns)
    table, rich, orders, corr = [], [], [], []
    finest = None
    for frac in schedule.eps_fracs:
        eps = frac * T
        row, hs = [], []
        for N in Ns:
            sol = first_eigen(assemble(metric, params, mu, 0, N, eps), max_iter=max_iter)
            row.append(sol.eigenvalue)
            hs.append((T - 2 * eps) / (N + 1))
            finest = sol
        noise = NOISE * max(1.0, abs(row[-1]))
        _check_monotone([p - q for p, q in zip(row, row[1:])], noise, f"N at eps={eps:.6g}")
        r = richardson(row[-2], row[-1], hs[-2], hs[-1])
        table.append(row)
        rich.append(r)
        corr.append(abs(r - row[-1]))
        orders.append(observed_order(row[-3:], hs[-3:]))

    noise = NOISE * max(1.0, abs(rich[-1]))
    tol = 10 * max(corr) + noise
    eps_diffs = [p - q for p, q in zip(rich, rich[1:])]
    if any(d < -tol for d in eps_diffs):
        raise NumericalFailure(f"eigenvalue increased as eps decreased: {eps_diffs}")
    tail = 0.0
    extrapolated = False
    fr = schedule.eps_fracs
    ratios = [fr[i] / fr[i + 1] for i in range(len(fr) - 1)]
    if len(eps_diffs) >= 2 and max(ratios) - min(ratios) < 1e-12 * max(ratios):
        d0, d1 = eps_diffs[-2], eps_diffs[-1]
        if d0 > tol and d1 > 0 and d0 > d1:
            tail = d1 / (d0 / d1 - 1.0)
            extrapolated = True
    value = rich[-1] - tail
    if extrapolated:
        err = abs(tail) + corr[-1] + noise
    else:
        err = (abs(eps_diffs[-1]) if eps_diffs else 0.0) + corr[-1] + noise

    diagnostics = {
        "Ns": Ns,
        "eps_fracs": list(fr),
        "eps": [f * T for f in fr],
        "eigenvalues": table,
        "richardson": rich,
        "observed_orders": orders,
        "eps_extrapolated": extrapolated,
        "eps_tail": tail,
        "finest_raw": table[-1][-1],
    }
    if sector_check:
        N_sec = Ns[-2]
        eps = fr[-1] * T
        l1 = first_eigen(assemble(metric, params, mu, 1, N_sec, eps), max_iter=max_iter).eigenvalue
        l0 = table[-1][-2]
        diagnostics["sector"] = {"N": N_sec, "eps": eps, "ell0": l0, "ell1": l1, "gap": l1 - l0}
    return EigenSolution(
        eigenvalue=value,
        nodes=finest.nodes,
        vector=finest.vector,
        mass=finest.mass,
        residual=finest.residual,
        error_bar=err,
        diagnostics=diagnostics,
    )


def rayleigh_quotient(metric: WarpedMetric, params: SpectralParams, u: RadialProfile, mu: MuSource = None) -> float:
    """``int (u'^2 + (cR - mu) u^2) W / int u^2 W`` by Simpson on ``u.grid``."""
    t = u.grid
    if np.any(t <= 0) or np.any(t >= metric.T):
        raise InvalidInput("trial function grid must be interior")
    du, _ = u.derivatives()
    weight = metric.phi(t) ** (metric.n - 1)
    denom = simpson(u.values**2 * weight, x=t)
    if not denom > 0:
        raise InvalidInput("trial function has zero norm")
    pot = params.c * scalar_curvature(metric, t) - _mu_at(mu, metric, params.kappa, t)
    num = simpson((du**2 + pot * u.values**2) * weight, x=t)
    return float(num / denom)


def _eigen_mu_terms(metric: WarpedMetric, kappa: float, t: np.ndarray, lap_v: Optional[np.ndarray] = None):
    lam = 2.0 / (4.0 - kappa)
    phi, d1, d2 = metric.derivs(t)
    v = phi**lam
    if lap_v is None:
        dv = lam * phi ** (lam - 1) * d1
        d2v = lam * (lam - 1) * phi ** (lam - 2) * d1**2 + lam * phi ** (lam - 1) * d2
        lap_v = d2v + (metric.n - 1) * d1 / phi * dv
    cR = scalar_curvature(metric, t) / kappa
    mu = mu_function(metric, kappa)(t)
    return -lap_v + cR * v - mu * v, mu * v


def verify_eigen_mu(metric: WarpedMetric, kappa: float, grid=None, method: str = "analytic") -> float:
    """Relative residual of ``-Lap v + c R v = mu v`` for ``v = phi^(2/(4-kappa))``.

    ``method="analytic"`` differentiates ``v`` through the warp's own
    derivatives.  ``method="fd"`` applies a three-point Laplacian to ``v``
    sampled on the warp table (or ``grid``) and reports the residual on the
    middle 80% of the domain, which exposes the discretization order.
    """
    if not 0 < kappa < 4:
        raise InvalidInput("kappa must lie in (0, 4)")
    if method == "analytic":
        t = metric.interior_grid() if grid is None else np.asarray(grid, dtype=float)
        resid, scale = _eigen_mu_terms(metric, kappa, t)
    elif method == "fd":
        x = metric.sample_grid() if grid is None else np.asarray(grid, dtype=float)
        lam = 2.0 / (4.0 - kappa)
        if metric.analytic:
            phi_x = metric.phi(x)
        else:
            phi_x = np.interp(x, metric.table[:, 0], metric.table[:, 1])
        v = np.abs(phi_x) ** lam
        hl = x[1:-1] - x[:-2]
        hr = x[2:] - x[1:-1]
        d2v = 2 * (hr * v[:-2] - (hl + hr) * v[1:-1] + hl * v[2:]) / (hl * hr * (hl + hr))
        dv = (hl**2 * v[2:] - hr**2 * v[:-2] + (hr**2 - hl**2) * v[1:-1]) / (hl * hr * (hl + hr))
        t = x[1:-1]
        keep = (t >= 0.1 * metric.T) & (t <= 0.9 * metric.T)
        t, dv, d2v = t[keep], dv[keep], d2v[keep]
        _, d1, _ = metric.derivs(t)
        lap_v = d2v + (metric.n - 1) * d1 / metric.phi(t) * dv
        resid, scale = _eigen_mu_terms(metric, kappa, t, lap_v)
    else:
        raise InvalidInput(f"unknown method {method!r}")
    return float(np.max(np.abs(resid)) / np.max(np.abs(scale)))


def scalar_inf(metric: WarpedMetric, samples: int = 20001) -> float:
    """Infimum of the scalar curvature (the ``kappa = 0`` spectral constant).

    Exact for the model family: the ``1/sin^2`` term has coefficient
    ``(n-2)(a^-2 - b^2)``, so the infimum sits at the midpoint when that is
    non-negative and is ``-inf`` (endpoint limit) otherwise.  Custom warps are
    minimized over a dense interior grid.
    """
    n = metric.n
    if metric.analytic:
        a, b = metric.a, metric.b
        gap = a**-2 - b**2
        if gap < 0:
            return -math.inf
        return (n - 1) * (n * b**2 + (n - 2) * gap)
    t = metric.interior_grid(samples, 1e-4)
    return float(np.min(scalar_curvature(metric, t)))
