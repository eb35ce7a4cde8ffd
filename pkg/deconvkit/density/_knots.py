from __future__ import annotations

import math
from typing import Literal

import numpy as np

from .._typing import FloatArray
from ._histogram import Histogram

Anchor = Literal["mode", "median"]


class DegenerateKnotsError(ValueError):
    """The sample has too few distinct values to place the requested knots."""


def mode_fraction(hist: Histogram) -> float:
    """r: the fraction of interval midpoints at or below the modal midpoint."""
    return float(np.mean(hist.midpoints <= hist.mode_midpoint))


def knot_levels(r: float, J: int) -> FloatArray:
    """Quantile levels of the J interior knots, anchored at level `r`.

    Levels below the anchor are i·r/d for i = 1..⌊J/2⌋, levels above are
    1 - (1-r)(J-j+1)/d for j = ⌈J/2⌉..J, with d = (J+1)/2. For even J both
    sets define index J/2; that knot gets the mean of the two, which equals
    both when r = ½.
    """
    if J < 2:
        raise ValueError(f"J must be >= 2, got {J}")
    d = (J + 1) / 2
    levels: dict[int, float] = {}
    for i in range(1, J // 2 + 1):
        levels[i] = i * r / d
    for j in range(math.ceil(J / 2), J + 1):
        q = 1 - (1 - r) * (J - j + 1) / d
        levels[j] = (levels[j] + q) / 2 if j in levels else q
    return np.clip(np.array([levels[i] for i in range(1, J + 1)]), 0.0, 1.0)


def place_knots(hist: Histogram, J: int, anchor: Anchor = "mode") -> FloatArray:
    """Place `J` interior knots at sample quantiles, relative to the mode.

    With `anchor="median"` the anchor level is ½, which spreads the knots
    evenly in probability. Knots that coincide or that fall on the sample
    range are dropped; if that leaves fewer than J, the median is added.

    Raises
    ------
    DegenerateKnotsError
        If J distinct interior knots cannot be found.
    """
    if J < 2:
        raise ValueError(f"J must be >= 2, got {J}")
    values = hist.values
    if np.unique(values).size < J + 2:
        raise DegenerateKnotsError(
            f"Need at least {J + 2} distinct values for {J} interior knots"
        )
    if anchor == "mode":
        r = mode_fraction(hist)
    elif anchor == "median":
        r = 0.5
    else:
        raise ValueError(f"anchor must be 'mode' or 'median', got {anchor!r}")
    lo, hi = values[0], values[-1]
    knots = np.unique(np.quantile(values, knot_levels(r, J)))
    knots = knots[(knots > lo) & (knots < hi)]
    if knots.size < J:
        median = float(np.median(values))
        if lo < median < hi:
            knots = np.unique(np.append(knots, median))
    if knots.size < J:
        raise DegenerateKnotsError(
            f"Only {knots.size} distinct interior knots for J={J} (anchor level {r:g})"
        )
    return knots
