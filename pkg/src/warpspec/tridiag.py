"""Lowest eigenpair of a symmetric tridiagonal matrix.

Bisection on the Sturm count brackets the eigenvalue, inverse iteration
recovers the vector and a Rayleigh quotient polishes the value.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import solve_banded

from .errors import NumericalFailure


def sturm_count(diag, off_sq, x: float, pivmin: float) -> int:
    """Number of eigenvalues strictly below ``x``.

    ``off_sq`` holds the squared off-diagonal entries.  Takes plain Python
    sequences; the recurrence is inherently serial.
    """
    count = 0
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(diag)):
        q = diag[i] - x - off_sq[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def gershgorin_lower(diag: np.ndarray, off: np.ndarray) -> float:
    radius = np.zeros_like(diag)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    return float(np.min(diag - radius))


def lowest_eigenvalue(diag: np.ndarray, off: np.ndarray, rtol: float = 1e-12) -> float:
    """Bisect until the bracket is below ``rtol * max(1, |lambda|)``."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    lo = gershgorin_lower(diag, off)
    hi = float(np.min(diag))  # Rayleigh quotient of a unit vector
    off_sq = (off**2).tolist()
    d = diag.tolist()
    scale = max(abs(lo), abs(hi), 1.0)
    pivmin = max(float(np.max(off**2, initial=0.0)), 1.0) * 1e-300
    width = hi - lo
    # the bracket cannot shrink below float spacing at this magnitude
    floor = 4 * np.finfo(float).eps * scale
    for _ in range(400):
        if hi - lo <= max(rtol * max(1.0, abs(lo), abs(hi)), floor):
            break
        mid = 0.5 * (lo + hi)
        if sturm_count(d, off_sq, mid, pivmin) >= 1:
            hi = mid
        else:
            lo = mid
    else:
        raise NumericalFailure(f"bisection did not converge from width {width:.3g}")
    return 0.5 * (lo + hi)


def inverse_iteration(diag: np.ndarray, off: np.ndarray, shift: float, max_iter: int = 6, tol: float = 1e-10):
    """Eigenvector for the eigenvalue nearest ``shift``.

    Returns ``(vector, rayleigh_quotient, residual)`` with a unit 2-norm,
    first-nonzero-positive vector.  Raises :class:`NumericalFailure` if the
    residual ``||T v - rq v||`` does not drop below ``tol * ||T||_inf`` within
    ``max_iter`` solves.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    m = diag.size
    norm = float(np.max(np.abs(diag) + np.r_[np.abs(off), 0.0] + np.r_[0.0, np.abs(off)]))
    # nudge off the eigenvalue so the solve stays (barely) nonsingular
    sigma = shift - 1e-14 * max(norm, 1.0)
    banded = np.zeros((3, m))
    banded[0, 1:] = off
    banded[1] = diag - sigma
    banded[2, :-1] = off
    v = np.full(m, 1.0 / math.sqrt(m))
    resid = math.inf
    rq = shift
    for _ in range(max_iter):
        y = solve_banded((1, 1), banded, v, check_finite=False)
        nrm = np.linalg.norm(y)
        if not (nrm > 0 and np.isfinite(nrm)):
            raise NumericalFailure("inverse iteration produced a degenerate vector")
        v = y / nrm
        tv = diag * v
        tv[:-1] += off * v[1:]
        tv[1:] += off * v[:-1]
        rq = float(v @ tv)
        resid = float(np.linalg.norm(tv - rq * v))
        if resid <= tol * norm:
            break
    else:
        raise NumericalFailure(f"inverse iteration residual {resid:.3g} above {tol * norm:.3g} after {max_iter} steps")
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return v, rq, resid
