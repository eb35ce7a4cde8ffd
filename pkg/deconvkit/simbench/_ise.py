from __future__ import annotations

import numpy as np
import numpy.typing as npt
from scipy import integrate

from .._util import is_equidistant
from ..distributions import DistributionSpec

MIN_GRID_POINTS = 32


class GridTooCoarseError(ValueError):
    """The y-grid is too short or not equidistant for the ISE quadrature."""


def ise(fhat: npt.ArrayLike, ygrid: npt.ArrayLike, truth: DistributionSpec) -> float:
    """The integrated squared error ∫(f̂ - f)² dy, by the trapezoid rule on `ygrid`.

    Tables report 10 times this value.

    Raises
    ------
    GridTooCoarseError
        If `ygrid` has fewer than 32 points or is not equidistant.
    """
    y = np.asarray(ygrid, dtype=np.float64)
    f = np.asarray(fhat, dtype=np.float64)
    if y.size < MIN_GRID_POINTS:
        raise GridTooCoarseError(
            f"Need at least {MIN_GRID_POINTS} grid points, got {y.size}"
        )
    if not is_equidistant(y):
        raise GridTooCoarseError("The y-grid must be equidistant")
    if f.shape != y.shape:
        raise ValueError(f"fhat has shape {f.shape}, the grid {y.shape}")
    return float(integrate.trapezoid((f - truth.pdf(y)) ** 2, y))


def count_turning_points(values: npt.ArrayLike, floor: float = 0.01) -> int:
    """How often the slope of a curve changes sign where it exceeds floor·max.

    A unimodal density has one turning point. Flat stretches do not count, and
    neither do wiggles in the tails below the floor.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.size < 3:
        return 0
    above = v > floor * np.max(v)
    slopes = np.sign(np.diff(v))[above[:-1] & above[1:]]
    slopes = slopes[slopes != 0]
    return int(np.count_nonzero(slopes[1:] != slopes[:-1]))
