from __future__ import annotations

import numpy as np
import pytest

from deconvkit.density import (
    Histogram,
    InsufficientDataError,
    build_histogram,
    select_bin_count,
)


def test_build_histogram_uniform_split():
    hist = build_histogram([0, 1, 2, 3], 2)
    np.testing.assert_array_equal(hist.counts, [2, 2])
    np.testing.assert_allclose(hist.boundaries, [0, 1.5, 3])
    np.testing.assert_allclose(hist.midpoints, [0.75, 2.25])
    assert hist.width == 1.5
    assert hist.total == 4


def test_build_histogram_right_closed():
    # 1.5 sits on the inner boundary and belongs to the first interval
    hist = build_histogram([0, 1, 1.5, 2, 3], 2)
    np.testing.assert_array_equal(hist.counts, [3, 2])


def test_build_histogram_conserves_counts(rng):
    x = rng.gamma(2.0, size=777)
    hist = build_histogram(x, 23)
    assert hist.total == 777
    assert hist.n_bins == 23
    assert hist.boundaries[0] == x.min()
    assert hist.boundaries[-1] == x.max()
    steps = np.diff(hist.midpoints)
    np.testing.assert_allclose(steps, hist.width, rtol=1e-12)
    np.testing.assert_array_equal(hist.values, np.sort(x))


def test_build_histogram_rejects_bad_input():
    with pytest.raises(ValueError):
        build_histogram([0, 1, 2], 1)
    with pytest.raises(InsufficientDataError):
        build_histogram([2, 2, 2], 3)


def test_histogram_validation():
    with pytest.raises(ValueError):
        Histogram([0, 1, 2], [1])
    with pytest.raises(ValueError):
        Histogram([0, 2, 1], [1, 1])
    with pytest.raises(ValueError):
        Histogram([0, 1, 2], [1, -1])
    hist = Histogram([0, 1, 2], [3, 4])
    assert repr(hist) == "Histogram(n_bins=2, range=[0, 2], total=7)"
    with pytest.raises(ValueError, match="without its sample"):
        hist.values


def test_mode_midpoint():
    hist = Histogram([0, 1, 2, 3], [1, 5, 5])
    # first of the tied maxima
    assert hist.mode_midpoint == 1.5


def test_select_bin_count_normal():
    x = np.random.default_rng(3).normal(size=500)
    n_bins = select_bin_count(x)
    assert 10 <= n_bins <= 40
    assert select_bin_count(x) == n_bins


def test_select_bin_count_minimum(rng):
    x = rng.normal(size=10)
    assert select_bin_count(x) >= 5


@pytest.mark.parametrize("seed", range(5))
def test_select_bin_count_doubling(seed):
    x = np.random.default_rng(seed).normal(size=400)
    assert select_bin_count(x) >= select_bin_count(x[:200]) / 2


def test_select_bin_count_degenerate():
    with pytest.raises(InsufficientDataError, match="zero spread"):
        select_bin_count(np.full(20, 1.5))
    with pytest.raises(InsufficientDataError, match="at least 10"):
        select_bin_count(np.arange(9.0))
