from __future__ import annotations

import numpy as np
import pytest
from sklearn.linear_model import PoissonRegressor

from deconvkit.density import (
    DensityFit,
    FitFailureError,
    Histogram,
    InsufficientDataError,
    NaturalSplineBasis,
    build_histogram,
    eval_density,
    fit_density,
    fit_poisson_spline,
    place_knots,
)
from deconvkit.distributions import DistributionSpec
from deconvkit.tests.util import integrated_squared_error


def test_flat_counts_give_flat_density():
    hist = Histogram(np.linspace(0, 10, 21), np.full(20, 50))
    fit = fit_poisson_spline(hist, [2.5, 5.0, 7.5])
    grid = np.linspace(1, 9, 81)
    np.testing.assert_allclose(fit(grid), 0.1, rtol=0.01)
    assert fit.df == 4


@pytest.mark.parametrize("fixture", ["normal_sample", "gamma_sample"])
def test_fit_integrates_to_one(fixture, request):
    x = request.getfixturevalue(fixture)
    fit = fit_density(x)
    assert abs(fit.integral() - 1) < 0.02
    grid = np.linspace(x.min() - 1, x.max() + 1, 1001)
    assert np.all(fit(grid) >= 0)


def test_fit_close_to_normal(normal_sample):
    fit = fit_density(normal_sample, df=5)
    grid = np.linspace(-5, 5, 2001)
    ise = integrated_squared_error(fit(grid), grid, DistributionSpec.normal(0, 1))
    assert ise < 0.01


def test_zero_outside_support(normal_sample):
    fit = fit_density(normal_sample)
    lo, hi = fit.support
    assert lo == normal_sample.min()
    assert hi == normal_sample.max()
    np.testing.assert_array_equal(eval_density(fit, [lo - 1e-9, hi + 1, -1e6]), 0)
    assert eval_density(fit, lo) > 0
    assert np.ndim(eval_density(fit, 0.0)) == 0


def test_midpoints_reproduce_fitted_counts(gamma_sample):
    hist = build_histogram(gamma_sample, 20)
    knots = place_knots(hist, 4)
    fit = fit_poisson_spline(hist, knots)
    basis = NaturalSplineBasis(knots, *fit.support)
    fitted = np.exp(basis(hist.midpoints) @ fit.coefficients)
    np.testing.assert_allclose(
        fit(hist.midpoints), fitted / (hist.width * hist.total), rtol=1e-10
    )
    # the intercept makes the fitted counts add up to the observed ones
    np.testing.assert_allclose(fitted.sum(), hist.total, rtol=1e-4)
    assert fit.normalizer == pytest.approx(hist.width * hist.total)


def test_matches_sklearn_poisson_glm(gamma_sample):
    hist = build_histogram(gamma_sample, 20)
    knots = place_knots(hist, 4)
    fit = fit_poisson_spline(hist, knots)
    X = NaturalSplineBasis(knots, *fit.support)(hist.midpoints)
    model = PoissonRegressor(alpha=0, solver="newton-cholesky", tol=1e-10, max_iter=100)
    model.fit(X[:, 1:], hist.counts)
    np.testing.assert_allclose(
        fit(hist.midpoints) * fit.normalizer, model.predict(X[:, 1:]), rtol=1e-4
    )


def test_location_equivariance(normal_sample):
    fit = fit_density(normal_sample, n_bins=20)
    shifted = fit_density(normal_sample + 3.0, n_bins=20)
    grid = np.linspace(-3, 3, 101)
    np.testing.assert_allclose(shifted(grid + 3.0), fit(grid), rtol=1e-6, atol=1e-9)


def test_more_df_never_worse(gamma_sample):
    hist = build_histogram(gamma_sample, 20)
    small = fit_poisson_spline(hist, place_knots(hist, 2))
    large = fit_poisson_spline(hist, place_knots(hist, 6))
    assert large.deviance <= small.deviance


def test_too_few_intervals():
    hist = Histogram([0, 1, 2, 3, 4], [1, 3, 3, 1])
    with pytest.raises(InsufficientDataError):
        fit_poisson_spline(hist, [1.0, 2.0, 3.0])


def test_fit_density_bad_df(normal_sample):
    with pytest.raises(ValueError):
        fit_density(normal_sample, df=2)


def test_fit_failure_keeps_trace():
    e = FitFailureError("diverged", [3.0, 5.0])
    assert e.trace == [3.0, 5.0]
    assert "diverged" in str(e)


def test_json(tmp_path, gamma_sample):
    fit = fit_density(gamma_sample)
    path = tmp_path / "fit.json"
    d = fit.to_json(path)
    loaded = DensityFit.from_json(path)
    grid = np.linspace(0, 15, 50)
    np.testing.assert_array_equal(loaded(grid), fit(grid))
    assert DensityFit.from_json(d).df == fit.df
    assert repr(loaded).startswith("DensityFit(df=5")
