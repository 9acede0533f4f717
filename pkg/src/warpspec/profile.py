from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInput


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """A function of the radial coordinate ``t`` sampled on a grid.

    ``d1`` and ``d2`` hold first and second ``t``-derivatives when they are
    known in closed form; consumers fall back to spline differentiation
    otherwise.
    """

    grid: np.ndarray
    values: np.ndarray
    d1: Optional[np.ndarray] = None
    d2: Optional[np.ndarray] = None
    label: str = ""

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or grid.size < 1:
            raise InvalidInput("profile grid must be 1-d and non-empty")
        if np.any(np.diff(grid) <= 0):
            raise InvalidInput("profile grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        for name in ("values", "d1", "d2"):
            arr = getattr(self, name)
            if arr is None:
                continue
            arr = np.broadcast_to(np.asarray(arr, dtype=float), grid.shape).copy()
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.grid.size

    def derivatives(self):
        """Return ``(d1, d2)``, differentiating a cubic spline where needed."""
        d1, d2 = self.d1, self.d2
        if d1 is None or d2 is None:
            from scipy.interpolate import CubicSpline

            if self.grid.size < 4:
                raise InvalidInput("spline differentiation needs at least 4 samples")

            spline = CubicSpline(self.grid, self.values)
            if d1 is None:
                d1 = spline(self.grid, 1)
            if d2 is None:
                d2 = spline(self.grid, 2) if self.d1 is None else CubicSpline(self.grid, d1)(self.grid, 1)
        return d1, d2

    @classmethod
    def constant(cls, grid, value: float, label: str = "") -> "RadialProfile":
        grid = np.asarray(grid, dtype=float)
        zeros = np.zeros_like(grid)
        return cls(grid, np.full_like(grid, value), zeros, zeros, label)


def scaled_residual(*terms) -> float:
    """Max over the grid of ``|sum(terms)| / max(1, sum(|terms|))``.

    Identities whose individual terms blow up near the collapsed ends are
    compared relative to the term magnitude there, and absolutely where the
    terms are O(1).
    """
    arrays = np.broadcast_arrays(*[np.asarray(t, dtype=float) for t in terms])
    total = np.sum(arrays, axis=0)
    scale = np.maximum(1.0, np.sum(np.abs(arrays), axis=0))
    return float(np.max(np.abs(total) / scale))
