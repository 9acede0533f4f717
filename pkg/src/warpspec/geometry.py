"""Rotationally symmetric metrics ``g = dt^2 + phi(t)^2 g_{S^{n-1}}``.

The radial coordinate is always called ``t`` and is kept in arclength gauge:
the ``dt^2`` coefficient is 1.  Perturbations of the form
``w(t)^2 dt^2 + phi(t)^2 g_S`` go through :func:`normalize_arclength` first.

Curvature and Laplacian formulas are singular where ``phi`` vanishes, so every
evaluation here happens on grids strictly inside ``(0, T)``.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.interpolate import BPoly, CubicHermiteSpline, CubicSpline

from .errors import IncomparableDomains, InvalidInput, NumericalFailure
from .profile import RadialProfile

# sample count used when an analytic metric has to be put on a grid
DEFAULT_SAMPLES = 2049


@dataclass(frozen=True, eq=False)
class WarpedMetric:
    """Warped product metric over ``[0, T]``.

    ``kind`` is ``"model"`` (``phi = a sin(b t)``, ``T = pi/b``), ``"round"``
    (the model with ``a = b = 1``) or ``"custom"`` (a sampled table).
    Analytic kinds evaluate exactly; custom tables are interpolated with a
    quintic Hermite when both derivative columns are present, a cubic Hermite
    with only ``phi'``, and a not-a-knot cubic spline otherwise.
    """

    n: int
    T: float
    kind: str
    a: float = math.nan
    b: float = math.nan
    table: Optional[np.ndarray] = None
    _interp: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise InvalidInput(f"dimension n must be an integer >= 3, got {self.n}")
        if not (self.T > 0 and math.isfinite(self.T)):
            raise InvalidInput(f"domain length must be positive, got {self.T}")
        if self.kind not in ("model", "round", "custom"):
            raise InvalidInput(f"unknown warp kind {self.kind!r}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def model(cls, n: int, a: float, b: float) -> "WarpedMetric":
        if not (a > 0 and b > 0):
            raise InvalidInput(f"model warp needs a > 0 and b > 0, got a={a}, b={b}")
        kind = "round" if (a == 1.0 and b == 1.0) else "model"
        return cls(n=n, T=math.pi / b, kind=kind, a=float(a), b=float(b))

    @classmethod
    def round(cls, n: int) -> "WarpedMetric":
        return cls.model(n, 1.0, 1.0)

    @classmethod
    def custom(cls, n: int, t, phi, dphi=None, d2phi=None) -> "WarpedMetric":
        t = np.asarray(t, dtype=float)
        phi = np.asarray(phi, dtype=float)
        if t.ndim != 1 or t.size < 4 or phi.shape != t.shape:
            raise InvalidInput("custom warp needs matching 1-d columns with >= 4 samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(phi))):
            raise InvalidInput("custom warp contains non-finite samples")
        if np.any(np.diff(t) <= 0):
            raise InvalidInput("custom warp abscissae must be strictly increasing")
        if t[0] != 0.0:
            raise InvalidInput(f"custom warp must start at t = 0, got {t[0]}")
        if np.any(phi[1:-1] <= 0):
            raise InvalidInput("warp must be positive on the interior")
        cols = [phi]
        if d2phi is not None and dphi is None:
            raise InvalidInput("phi_second given without phi_prime")
        if dphi is not None:
            cols.append(np.asarray(dphi, dtype=float))
            if d2phi is not None:
                cols.append(np.asarray(d2phi, dtype=float))
        table = np.column_stack(cols)
        if not np.all(np.isfinite(table)):
            raise InvalidInput("custom warp contains non-finite derivative samples")
        if table.shape[1] == 3:
            interp = BPoly.from_derivatives(t, table, extrapolate=False)
        elif table.shape[1] == 2:
            interp = CubicHermiteSpline(t, phi, table[:, 1], extrapolate=False)
        else:
            interp = CubicSpline(t, phi, extrapolate=False)
        derivs = (interp, interp.derivative(1), interp.derivative(2))
        return cls(n=n, T=float(t[-1]), kind="custom", table=np.column_stack([t, table]), _interp=derivs)

    # -- evaluation ----------------------------------------------------------

    @property
    def analytic(self) -> bool:
        return self.kind != "custom"

    def derivs(self, t):
        """Return ``(phi, phi', phi'')`` at ``t``."""
        t = np.asarray(t, dtype=float)
        if self.analytic:
            s = np.sin(self.b * t)
            c = np.cos(self.b * t)
            return self.a * s, self.a * self.b * c, -self.a * self.b**2 * s
        if np.any(t < 0) or np.any(t > self.T):
            raise InvalidInput("evaluation point outside the warp domain")
        f0, f1, f2 = self._interp
        return f0(t), f1(t), f2(t)

    def phi(self, t):
        return self.derivs(t)[0]

    def sample_grid(self) -> np.ndarray:
        if self.analytic:
            return np.linspace(0.0, self.T, DEFAULT_SAMPLES)
        return self.table[:, 0].copy()

    def interior_grid(self, m: int = 1001, margin: float = 1e-3) -> np.ndarray:
        """Uniform grid on ``[margin*T, (1-margin)*T]``."""
        return np.linspace(margin * self.T, (1.0 - margin) * self.T, m)

    def with_angular_scale(self, s: float) -> "WarpedMetric":
        """The metric with warp ``s * phi`` on the same radial domain."""
        if s <= 0:
            raise InvalidInput("angular scale must be positive")
        if self.analytic:
            return WarpedMetric.model(self.n, self.a * s, self.b)
        t, *cols = self.table.T
        return WarpedMetric.custom(self.n, t, *[s * col for col in cols])

    def scaled(self, lam: float) -> "WarpedMetric":
        """The metric ``lam^2 g``: ``t -> lam t`` and ``phi -> lam phi``."""
        if lam <= 0:
            raise InvalidInput("scale factor must be positive")
        if self.analytic:
            return WarpedMetric.model(self.n, self.a * lam, self.b / lam)
        t, *cols = self.table.T
        # phi'(t) is invariant, phi'' picks up 1/lam
        factors = [lam, 1.0, 1.0 / lam][: len(cols)]
        return WarpedMetric.custom(self.n, lam * t, *[f * col for f, col in zip(factors, cols)])


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    grid: np.ndarray
    R: np.ndarray
    H: np.ndarray
    K_assumed: float = 1.0


@dataclass(frozen=True)
class DriftReport:
    c1: float
    c2: float
    residual_left: float
    residual_right: float
    window: tuple


class Domination(enum.IntEnum):
    FALSE = 0
    TRUE_EQUAL = 1
    TRUE_STRICT = 2

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class DominationResult:
    verdict: Domination
    witness: Optional[float]
    margin: float


def make_model_metric(n: int, consts) -> WarpedMetric:
    """Model metric ``dt^2 + a^2 sin^2(b t) g_S`` from a ModelConstants-like object."""
    return WarpedMetric.model(n, consts.a, consts.b)


def _interior(metric: WarpedMetric, grid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(grid <= 0) or np.any(grid >= metric.T):
        raise InvalidInput("evaluation grid must lie strictly inside (0, T)")
    return grid


def scalar_curvature(metric: WarpedMetric, t) -> np.ndarray:
    """Scalar curvature at interior points ``t``."""
    n = metric.n
    t = _interior(metric, t)
    if metric.analytic:
        a, b = metric.a, metric.b
        s2 = np.sin(b * t) ** 2
        return (n - 1) * (n * b**2 + (n - 2) * (a**-2 - b**2) / s2)
    phi, d1, d2 = metric.derivs(t)
    if np.any(phi <= 0):
        raise InvalidInput("warp is not positive at some curvature sample")
    return (n - 1) * ((n - 2) * (1.0 - d1**2) - 2.0 * d2 * phi) / phi**2


def scalar_curvature_profile(metric: WarpedMetric, grid) -> CurvatureReport:
    grid = _interior(metric, grid)
    phi, d1, _ = metric.derivs(grid)
    if np.any(phi <= 0):
        raise InvalidInput("warp is not positive at some curvature sample")
    return CurvatureReport(grid=grid, R=scalar_curvature(metric, grid), H=(metric.n - 1) * d1 / phi)


def radial_laplacian(metric: WarpedMetric, u: RadialProfile) -> RadialProfile:
    """``u'' + (n-1) (phi'/phi) u'`` on the profile's grid."""
    grid = _interior(metric, u.grid)
    phi, d1, _ = metric.derivs(grid)
    du, d2u = u.derivatives()
    return RadialProfile(grid, d2u + (metric.n - 1) * (d1 / phi) * du, label="laplacian")


def normalize_arclength(w: RadialProfile, phi: RadialProfile, n: int) -> WarpedMetric:
    """Put ``w(t)^2 dt^2 + phi(t)^2 g_S`` in arclength gauge.

    ``s(t) = int_0^t w``; the new warp is ``phi(t(s))`` with derivatives by
    the chain rule.  ``w`` must be at least 1 everywhere.
    """
    if w.grid.shape != phi.grid.shape or np.any(w.grid != phi.grid):
        raise InvalidInput("w and phi must share a grid")
    if w.grid[0] != 0.0:
        raise InvalidInput("profiles must start at t = 0")
    if np.any(w.values < 1.0):
        raise InvalidInput("stretch factor w must be >= 1 everywhere")
    t = w.grid
    dw, _ = w.derivatives() if w.d1 is None else (w.d1, None)
    s = BPoly.from_derivatives(t, np.column_stack([w.values, dw])).antiderivative()(t)
    s[0] = 0.0
    dphi, d2phi = phi.derivatives()
    ww = w.values
    return WarpedMetric.custom(n, s, phi.values, dphi / ww, (d2phi * ww - dphi * dw) / ww**3)


def _max_spacing(grid: np.ndarray) -> float:
    return float(np.max(np.diff(grid)))


def metric_dominates(g: WarpedMetric, g0: WarpedMetric, rtol: float = 1e-10) -> DominationResult:
    """Classify whether ``g >= g0`` under the identity in arclength.

    Both warps are resampled on the finer of their sample grids, clipped to
    ``[0, T0]``.  Differences within ``rtol * max(phi0)`` count as equal.
    """
    if g.n != g0.n:
        raise InvalidInput("metrics of different dimension")
    if g.T < g0.T * (1.0 - 1e-14):
        raise IncomparableDomains(f"domain of g ({g.T}) is shorter than that of g0 ({g0.T})")
    grids = [g.sample_grid(), g0.sample_grid()]
    grid = min(grids, key=_max_spacing)
    if grid[-1] < g0.T:
        grid = np.append(grid, g0.T)
    grid = grid[grid <= g0.T]
    phi0 = g0.phi(grid)
    diff = g.phi(np.minimum(grid, g.T)) - phi0
    tol = rtol * max(1.0, float(np.max(np.abs(phi0))))
    i_min = int(np.argmin(diff))
    i_max = int(np.argmax(diff))
    if diff[i_min] < -tol:
        return DominationResult(Domination.FALSE, float(grid[i_min]), float(diff[i_min]))
    if diff[i_max] > tol:
        return DominationResult(Domination.TRUE_STRICT, float(grid[i_max]), float(diff[i_max]))
    return DominationResult(Domination.TRUE_EQUAL, None, float(diff[i_max]))


def gauge_dominates(w: RadialProfile, phi: RadialProfile, g0: WarpedMetric, rtol: float = 1e-10) -> DominationResult:
    """Domination of ``w^2 dt^2 + phi^2 g_S`` over ``g0`` before normalization.

    The identity in ``t`` is 1-Lipschitz from the stretched metric to ``g0``
    exactly when ``w >= 1`` and ``phi >= phi0``.
    """
    t = phi.grid
    if t[-1] < g0.T * (1.0 - 1e-14):
        raise IncomparableDomains("stretched profile does not cover the model domain")
    t = t[t <= g0.T]
    m = t.size
    phi0 = g0.phi(t)
    tol = rtol * max(1.0, float(np.max(np.abs(phi0))))
    dphi = phi.values[:m] - phi0
    dw = w.values[:m] - 1.0
    worst = min((dphi, dw), key=lambda arr: arr.min())
    if worst.min() < -tol:
        i = int(np.argmin(worst))
        return DominationResult(Domination.FALSE, float(t[i]), float(worst[i]))
    best = max((dphi, dw), key=lambda arr: arr.max())
    if best.max() > tol:
        i = int(np.argmax(best))
        return DominationResult(Domination.TRUE_STRICT, float(t[i]), float(best[i]))
    return DominationResult(Domination.TRUE_EQUAL, None, float(best.max()))


def drift_coefficient(n: int, kappa: float) -> float:
    """Coefficient ``C`` with ``Delta t - 2(6-k)/(4-k) phi'/phi = C phi'/phi``."""
    return (n - 1) - 2.0 * (6.0 - kappa) / (4.0 - kappa)


def drift_asymptotics(
    metric: WarpedMetric,
    kappa: float,
    window: tuple = (1.0 / 200, 1.0 / 20),
    samples: int = 400,
    max_residual: float = 1e-2,
) -> DriftReport:
    """Fit ``-c1/t + C`` near 0 and ``c2/(T-t) + C`` near T to the drift.

    ``window`` is given as fractions of ``T`` measured from each end.  The
    relative RMS fit residual must stay below ``max_residual``.
    """
    if not 0 <= kappa < 4:
        raise InvalidInput("kappa must lie in [0, 4)")
    T = metric.T
    phi_end = metric.phi(np.array([0.0, T]))
    if np.any(np.abs(phi_end) > 1e-8 * max(1.0, float(metric.phi(T / 2)))):
        raise InvalidInput("drift fit needs a warp that closes at both ends")
    dist = np.linspace(window[0] * T, window[1] * T, samples)
    coef = drift_coefficient(metric.n, kappa)
    out = []
    for t, sign in ((dist, -1.0), (T - dist, 1.0)):
        phi, d1, _ = metric.derivs(t)
        drift = coef * d1 / phi
        design = np.column_stack([sign / dist, np.ones_like(dist)])
        sol, *_ = np.linalg.lstsq(design, drift, rcond=None)
        resid = float(np.linalg.norm(design @ sol - drift) / np.linalg.norm(drift))
        if not (resid <= max_residual and np.all(np.isfinite(sol))):
            raise NumericalFailure(f"drift fit residual {resid:.3g} exceeds {max_residual}")
        out.append((float(sol[0]), resid))
    (c1, r1), (c2, r2) = out
    return DriftReport(c1=c1, c2=c2, residual_left=r1, residual_right=r2, window=tuple(window))


# -- warp table files ---------------------------------------------------------

WARP_COLUMNS = ("t", "phi", "phi_prime", "phi_second")


def read_warp_csv(path, n: int) -> WarpedMetric:
    """Read a ``t,phi[,phi_prime,phi_second]`` table into a custom metric."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise InvalidInput(f"cannot read warp file {path}: {exc}") from exc
    if not rows:
        raise InvalidInput(f"warp file {path} is empty")
    header = tuple(col.strip() for col in rows[0])
    if header not in (WARP_COLUMNS[:2], WARP_COLUMNS[:3], WARP_COLUMNS):
        raise InvalidInput(f"warp file header must be a prefix of {','.join(WARP_COLUMNS)} with t,phi")
    try:
        data = np.array([[float(x) for x in row] for row in rows[1:] if row], dtype=float)
    except ValueError as exc:
        raise InvalidInput(f"malformed number in warp file {path}: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != len(header):
        raise InvalidInput(f"warp file {path} has ragged rows")
    return WarpedMetric.custom(n, *data.T)


def format_warp_csv(metric: WarpedMetric, samples: int = 4097) -> str:
    """The warp table as CSV text with both derivative columns."""
    t = metric.sample_grid() if not metric.analytic else np.linspace(0.0, metric.T, samples)
    cols = np.column_stack([t, *metric.derivs(t)])
    if metric.analytic:
        cols[0, 1] = 0.0
        cols[-1, 1] = 0.0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(WARP_COLUMNS)
    for row in cols:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def write_warp_csv(path, metric: WarpedMetric, samples: int = 4097) -> Path:
    path = Path(path)
    path.write_text(format_warp_csv(metric, samples), encoding="utf-8")
    return path
