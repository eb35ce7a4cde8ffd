from __future__ import annotations

import math

import numpy as np
import pytest

from deconvkit.baselines import (
    DampingFitError,
    estimate_damping,
    fdd_deconvolve,
    fit_decay,
)
from deconvkit.distributions import DistributionSpec
from deconvkit.npfd import DataQualityWarning
from deconvkit.tests.util import integrated_squared_error

YGRID = np.linspace(-6, 6, 241)
GAMMA = DistributionSpec.gamma(4, 1)


def test_decay_fit_on_normal_sample(normal_sample):
    fit = fit_decay(normal_sample)
    assert fit.n_points >= 2
    assert 1.0 <= fit.t_lo <= fit.t_hi
    assert fit.floor == pytest.approx(normal_sample.size**-0.5)
    # the log-log slope of e^{-t²/2} is -t²
    assert 1.5 < fit.p < 8
    # the line meets the noise level near the end of the fit region
    assert fit.t_hi - 0.25 < fit.crossing() < fit.t_hi + 1.0


def test_slope_rule(normal_sample):
    fit = estimate_damping(normal_sample, rule="slope")
    assert fit.x_fit is not None
    assert fit.z_fit is None
    assert fit.M == pytest.approx(fit.x_fit.p / math.sqrt(2))


def test_damping_fit_needs_decay():
    with pytest.raises(DampingFitError, match="stays above"):
        estimate_damping(np.zeros(100), rule="slope")
    with pytest.raises(DampingFitError, match="of z stays above"):
        estimate_damping(np.ones(100), np.zeros(100))
    with pytest.raises(ValueError, match="needs the mixed sample"):
        estimate_damping(np.ones(100))


def test_crossing_rule_halves_the_weight_where_z_meets_its_noise():
    x = DistributionSpec.exponential(0.5).sample(500, 36)
    z = GAMMA.sample(500, 37) + DistributionSpec.exponential(0.5).sample(500, 38)
    fit = estimate_damping(x, z)
    # |φ_X| = (1 + 4t²)^{-1/2} reaches 500^{-1/2} only near t = 11
    assert fit.t_x > 5
    assert fit.M == pytest.approx(2 * fit.t_z)
    assert 2 < fit.M < 4


def test_crossing_rule_is_capped_where_x_meets_its_noise():
    x = DistributionSpec.normal(0, 1).sample(500, 32)
    z = DistributionSpec.normal(0, variance=2).sample(500, 33)
    fit = estimate_damping(x, z)
    assert fit.M == pytest.approx(fit.t_x)
    assert fit.M < 2 * fit.t_z


def test_point_mass_error_sets_no_cap():
    z = DistributionSpec.normal(1, 1).sample(1000, 39)
    fit = estimate_damping(np.ones(1000), z)
    assert fit.x_fit is None
    assert fit.M == pytest.approx(2 * fit.t_z)


def test_crossing_rule_beats_the_slope_rule_on_exponential_errors():
    x = DistributionSpec.exponential(0.5).sample(500, 36)
    z = GAMMA.sample(500, 37) + DistributionSpec.exponential(0.5).sample(500, 38)
    ygrid = np.linspace(-10, 25, 351)
    crossing = fdd_deconvolve(x, z, ygrid)
    slope = fdd_deconvolve(x, z, ygrid, rule="slope")
    assert crossing.diagnostics["rule"] == "crossing"
    assert slope.diagnostics["damping"] < 1
    ise_crossing = 10 * integrated_squared_error(crossing.density, ygrid, GAMMA)
    ise_slope = 10 * integrated_squared_error(slope.density, ygrid, GAMMA)
    assert ise_crossing < 0.2
    assert ise_crossing < 0.5 * ise_slope


def test_point_mass_error_gives_damped_kde():
    # x ≡ 1 only shifts z, so the estimate is a Fejér-smoothed KDE of z - 1
    x = np.ones(1000)
    z = DistributionSpec.normal(1, 1).sample(1000, 31)
    result = fdd_deconvolve(x, z, YGRID, damping=3.0)
    assert result.method == "fdd"
    assert result.diagnostics["damping"] == 3.0
    assert result.diagnostics["non_finite"] == 0
    ise = integrated_squared_error(result.density, YGRID, DistributionSpec.normal(0, 1))
    assert ise < 0.05


def test_two_sample_estimate_is_finite():
    x = DistributionSpec.normal(0, 1).sample(500, 32)
    z = DistributionSpec.normal(0, variance=2).sample(500, 33)
    result = fdd_deconvolve(x, z, YGRID)
    assert np.all(np.isfinite(result.density))
    assert result.diagnostics["damping"] > 0
    assert "p" in result.diagnostics
    ise = integrated_squared_error(result.density, YGRID, DistributionSpec.normal(0, 1))
    assert ise < 0.1


def test_vanishing_damping_width_is_flagged():
    x = DistributionSpec.normal(0, 1).sample(200, 34)
    z = DistributionSpec.normal(0, variance=2).sample(200, 35)
    with pytest.warns(DataQualityWarning, match="nearly flat"):
        result = fdd_deconvolve(x, z, YGRID, damping=1e-3)
    assert result.diagnostics["degenerate"]
    assert np.max(np.abs(result.density)) < 1e-3
