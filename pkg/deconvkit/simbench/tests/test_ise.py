from __future__ import annotations

import math

import numpy as np
import pytest

from deconvkit.distributions import DistributionSpec
from deconvkit.simbench import GridTooCoarseError, count_turning_points, ise

STANDARD_NORMAL = DistributionSpec.normal(0, 1)


def test_exact_density_scores_zero():
    y = np.linspace(-6, 6, 201)
    assert ise(STANDARD_NORMAL.pdf(y), y, STANDARD_NORMAL) == pytest.approx(0, abs=1e-6)


def test_zero_estimate_scores_squared_norm():
    y = np.linspace(-8, 8, 401)
    expected = 1 / (2 * math.sqrt(math.pi))
    value = ise(np.zeros_like(y), y, STANDARD_NORMAL)
    assert value == pytest.approx(expected, rel=1e-4)


def test_quadratic_in_the_estimate():
    y = np.linspace(-6, 6, 121)
    f = STANDARD_NORMAL.pdf(y)
    # vanishes on the grid
    far = DistributionSpec.normal(100, 1)
    assert ise(2 * f, y, far) == pytest.approx(4 * ise(f, y, far), rel=1e-12)


def test_grid_checks():
    with pytest.raises(GridTooCoarseError, match="at least 32"):
        ise(np.zeros(31), np.linspace(0, 1, 31), STANDARD_NORMAL)
    uneven = np.linspace(0, 1, 40) ** 2
    with pytest.raises(GridTooCoarseError, match="equidistant"):
        ise(np.zeros(40), uneven, STANDARD_NORMAL)
    with pytest.raises(ValueError, match="shape"):
        ise(np.zeros(39), np.linspace(0, 1, 40), STANDARD_NORMAL)


def test_turning_points():
    y = np.linspace(-8, 8, 801)
    assert count_turning_points(STANDARD_NORMAL.pdf(y)) == 1
    bimodal = DistributionSpec.mixture(
        [DistributionSpec.normal(-3, 1), DistributionSpec.normal(3, 1)]
    )
    assert count_turning_points(bimodal.pdf(y)) == 3
    assert count_turning_points(np.zeros(10)) == 0


def test_tail_wiggles_below_floor_are_ignored():
    y = np.linspace(-8, 8, 801)
    wiggly = STANDARD_NORMAL.pdf(y) + 1e-4 * np.where(np.abs(y) > 5, np.sin(20 * y), 0)
    assert count_turning_points(wiggly) == 1
    assert count_turning_points(wiggly, floor=0) > 1
