"""Closed-form constants of the model family and the identities they satisfy.

Conventions
-----------
``kappa = 1/c`` with ``0 <= kappa < 4``.  For ``kappa > 0`` the spectral
target ``lam`` is the c-spectral constant.  For ``kappa = 0`` (the pointwise
scalar curvature mode) ``lam`` is the rescaled target ``kappa * Lambda``, so
``lam = n(n-1)`` gives the round sphere with ``a = b = 1``.

Two sign conventions for the auxiliary function ``f`` coexist:

* :func:`f_warp` uses ``+ (4n - (n-1)kappa) / (n(4-kappa)) * phi'/phi``, which
  reproduces :func:`f_cot` on the model warp.
* :func:`xi_profile` (three dimensions) uses
  ``- 2(6-kappa) / (3(4-kappa)) * phi'/phi``, i.e. ``xi = -f_warp`` at ``n = 3``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import mpmath
import numpy as np

from .errors import InvalidInput
from .geometry import WarpedMetric
from .profile import RadialProfile, scaled_residual

# working precision of the high-precision path
MP_DPS = 40


@dataclass(frozen=True)
class SpectralParams:
    kappa: float
    lam: float

    def __post_init__(self):
        if not (0.0 <= self.kappa < 4.0):
            raise InvalidInput(f"kappa must lie in [0, 4), got {self.kappa}")
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise InvalidInput(f"spectral target must be positive, got {self.lam}")

    @property
    def c(self) -> float:
        return math.inf if self.kappa == 0 else 1.0 / self.kappa

    @property
    def lambda_tilde(self) -> float:
        """``kappa * Lambda``; equals ``lam`` itself in the pointwise mode."""
        return self.lam if self.kappa == 0 else self.kappa * self.lam


@dataclass(frozen=True)
class ModelConstants:
    n: int
    a: float
    b: float
    a1: float
    beta2: float
    lambda_exp: float
    alpha: Optional[float] = None

    @property
    def T(self) -> float:
        return math.pi / self.b


def _check_n(n: int):
    if int(n) != n or n < 3:
        raise InvalidInput(f"dimension n must be an integer >= 3, got {n}")


def _nd_mp(n: int, params: SpectralParams):
    """All n-dimensional constants as mpmath numbers."""
    _check_n(n)
    k = mpmath.mpf(params.kappa)
    L = mpmath.mpf(params.lam)
    beta2 = mpmath.mpf(n) / (n - 1) * (4 * (n - 1) - (n - 2) * k) / (4 * n - (n - 1) * k)
    lam_exp = 2 / (4 - k)
    den_a = 4 * (n - 2) - (n - 3) * k
    assert den_a > 0
    if params.kappa == 0:
        # pointwise limit, L is the rescaled target
        a = mpmath.sqrt(n * (n - 1) / L)
        b = 1 / a
        a1 = mpmath.sqrt(L * n / (n - 1)) / 2
    else:
        c = 1 / k
        a = mpmath.sqrt((n - 1) * (n - 2) * (4 * n * c - (n - 1)) / (L * den_a))
        b = mpmath.sqrt(L) * (4 - k) / mpmath.sqrt((4 * n * c - (n - 1)) * (4 * (n - 1) - (n - 2) * k))
        a1 = mpmath.sqrt(L * (4 * n - (n - 1) * k) / (4 * (n - 1) * c - (n - 2))) / 2
    return a, b, a1, beta2, lam_exp


def _alpha_mp(params: SpectralParams):
    k = mpmath.mpf(params.kappa)
    if params.kappa == 0:
        return mpmath.sqrt(mpmath.mpf(params.lam) * 3 / 8)
    return mpmath.sqrt(params.lam * (6 - k) / (2 * (1 / k) * (8 - k)))


def constants_nd(n: int, params: SpectralParams) -> ModelConstants:
    """Warp amplitude/frequency and auxiliary constants in dimension ``n``."""
    with mpmath.workdps(MP_DPS):
        a, b, a1, beta2, lam_exp = _nd_mp(n, params)
        alpha = float(_alpha_mp(params)) if n == 3 else None
        return ModelConstants(n, float(a), float(b), float(a1), float(beta2), float(lam_exp), alpha)


def constants_3d(params: SpectralParams) -> ModelConstants:
    """The three-dimensional constants from their dedicated formulas.

    Computed independently of :func:`constants_nd` so the two can be compared.
    """
    with mpmath.workdps(MP_DPS):
        k = mpmath.mpf(params.kappa)
        L = mpmath.mpf(params.lam)
        if params.kappa == 0:
            a = mpmath.sqrt(6 / L)
            b = mpmath.sqrt(L / 6)
        else:
            c = 1 / k
            a = mpmath.sqrt((6 * c - 1) / L)
            b = mpmath.sqrt(L) * (4 - k) / mpmath.sqrt(2 * c * (6 - k) * (8 - k))
        alpha = _alpha_mp(params)
        beta2 = 3 * (8 - k) / (4 * (6 - k))
        return ModelConstants(3, float(a), float(b), float(alpha), float(beta2), float(2 / (4 - k)), float(alpha))


def relation_residuals(n: int, params: SpectralParams, precise: bool = True) -> dict:
    """Residuals of the defining relations of ``a, b``.

    ``beta2_relation``: ``beta2 a1^2 - beta2 a1 b - n(n-2)/(4a^2)``;
    ``eigen_sin2``, ``eigen_const``: the two coefficient equations obtained by
    substituting ``sin^lambda(b t)`` into the eigenvalue equation.

    With ``precise`` the constants and residuals stay in extended precision;
    otherwise the float constants are checked in float arithmetic.
    """
    with mpmath.workdps(MP_DPS):
        if precise:
            a, b, a1, beta2, lam = _nd_mp(n, params)
            k = mpmath.mpf(params.kappa)
            Lt = mpmath.mpf(params.lambda_tilde) if params.kappa == 0 else k * mpmath.mpf(params.lam)
        else:
            m = constants_nd(n, params)
            a, b, a1, beta2, lam = m.a, m.b, m.a1, m.beta2, m.lambda_exp
            k, Lt = params.kappa, params.lambda_tilde
        res = {
            "beta2_relation": beta2 * a1**2 - beta2 * a1 * b - n * (n - 2) / (4 * a**2),
            "eigen_sin2": k * (lam + n - 1) * lam * b**2 + n * (n - 1) * b**2 - Lt,
            "eigen_const": -k * (lam + n - 2) * lam * b**2 + (n - 1) * (n - 2) * (a**-2 - b**2),
        }
        return {key: abs(float(val)) for key, val in res.items()}


def specialization_gap(params: SpectralParams) -> dict:
    """Field-wise differences between the 3-d formulas and ``constants_nd(3)``."""
    nd = constants_nd(3, params)
    d3 = constants_3d(params)
    gaps = {name: abs(getattr(nd, name) - getattr(d3, name)) for name in ("a", "b", "a1", "beta2", "lambda_exp")}
    gaps["alpha_vs_a1"] = abs(d3.alpha - nd.a1)
    return gaps


# -- the auxiliary function f --------------------------------------------------


def f_cot(theta, consts: ModelConstants, n: int):
    """``(2 a1 / n) cot(b theta)`` on ``(0, pi/b)``."""
    theta = np.asarray(theta, dtype=float)
    return 2.0 * consts.a1 / n / np.tan(consts.b * theta)


def f_ode_terms(theta, consts: ModelConstants, params: SpectralParams, n: int):
    """The four terms of the Riccati equation solved by :func:`f_cot`."""
    theta = np.asarray(theta, dtype=float)
    s2 = np.sin(consts.b * theta) ** 2
    f = f_cot(theta, consts, n)
    df = -2.0 * consts.a1 * consts.b / n / s2
    return (
        np.full_like(theta, params.lambda_tilde / 4.0),
        n * (n - 1) / 4.0 * consts.beta2 * f**2,
        (n - 1) / 2.0 * consts.beta2 * df,
        -(n - 2) * (n - 1) / 4.0 / (consts.a**2 * s2),
    )


def check_f_ode(consts: ModelConstants, params: SpectralParams, n: int, grid) -> float:
    return scaled_residual(*f_ode_terms(grid, consts, params, n))


def _grid_for(metric: WarpedMetric, grid):
    grid = metric.interior_grid() if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(grid >= metric.T):
        raise InvalidInput("grid must lie strictly inside (0, T)")
    return grid


def _log_derivs(metric: WarpedMetric, grid):
    """``(phi, phi'/phi, (phi'/phi)')`` on ``grid``."""
    phi, d1, d2 = metric.derivs(grid)
    q = d1 / phi
    return phi, q, d2 / phi - q**2


def f_coefficient(n: int, kappa: float) -> float:
    return (4 * n - (n - 1) * kappa) / (n * (4 - kappa))


def f_warp(metric: WarpedMetric, kappa: float, grid=None) -> RadialProfile:
    if not 0 <= kappa < 4:
        raise InvalidInput("kappa must lie in [0, 4)")
    grid = _grid_for(metric, grid)
    _, q, dq = _log_derivs(metric, grid)
    k = f_coefficient(metric.n, kappa)
    return RadialProfile(grid, k * q, k * dq, label="f")


def beta2(n: int, kappa: float) -> float:
    return n / (n - 1) * (4 * (n - 1) - (n - 2) * kappa) / (4 * n - (n - 1) * kappa)


def mu_function(metric: WarpedMetric, kappa: float):
    """Return ``t -> mu(t)`` solving the f-mu relation for ``metric``.

    Warns when ``log(phi)`` fails to be strictly concave on a probe grid.
    """
    if not 0 < kappa < 4:
        raise InvalidInput("mu is defined for 0 < kappa < 4 only")
    n = metric.n
    k = f_coefficient(n, kappa)
    b2 = beta2(n, kappa)
    probe = metric.interior_grid(513, 1e-2)
    if np.any(_log_derivs(metric, probe)[2] >= 0):
        warnings.warn("warp is not strictly log-concave; mu may be meaningless", RuntimeWarning, stacklevel=2)

    def mu(t):
        phi, q, dq = _log_derivs(metric, np.asarray(t, dtype=float))
        f, df = k * q, k * dq
        bracket = (n - 2) * (n - 1) / 4.0 / phi**2 - n * (n - 1) / 4.0 * b2 * f**2 - (n - 1) / 2.0 * b2 * df
        return 4.0 / kappa * bracket

    return mu


def mu_profile(metric: WarpedMetric, kappa: float, grid=None) -> RadialProfile:
    grid = _grid_for(metric, grid)
    return RadialProfile(grid, mu_function(metric, kappa)(grid), label="mu")


def xi_coefficient(kappa: float) -> float:
    return 2 * (6 - kappa) / (3 * (kappa - 4))


def xi_profile(metric: WarpedMetric, kappa: float, grid=None) -> RadialProfile:
    if metric.n != 3:
        raise InvalidInput("xi is defined in dimension 3 only")
    if not 0 < kappa < 4:
        raise InvalidInput("xi needs 0 < kappa < 4")
    grid = _grid_for(metric, grid)
    _, q, dq = _log_derivs(metric, grid)
    k = xi_coefficient(kappa)
    return RadialProfile(grid, k * q, k * dq, label="xi")


def xi_ode_terms(metric: WarpedMetric, params: SpectralParams, grid=None):
    xi = xi_profile(metric, params.kappa, grid)
    alpha2 = constants_3d(params).alpha ** 2
    phi = metric.phi(xi.grid)
    return (
        np.ones_like(xi.grid),
        9.0 / (4.0 * alpha2) * xi.values**2,
        -3.0 / (2.0 * alpha2) * xi.d1,
        -2.0 * params.c / params.lam / phi**2,
    )


def check_xi_ode(metric: WarpedMetric, params: SpectralParams, grid=None) -> float:
    return scaled_residual(*xi_ode_terms(metric, params, grid))
