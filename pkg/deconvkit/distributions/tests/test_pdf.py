from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from deconvkit.distributions import DistributionSpec, pdf, standard_laplace_kfold_pdf


def _fourier_kfold(k: int, w: float) -> float:
    # (1/π)∫₀^∞ cos(tw)/(1+t²)^k dt, truncated where the tail is negligible
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, _ = integrate.quad(
            lambda t: math.cos(t * w) * (1 + t * t) ** (-k),
            0,
            200,
            limit=400,
            epsabs=1e-13,
            epsrel=1e-10,
        )
    return value / math.pi


def test_pdf_examples():
    assert pdf(DistributionSpec.normal(0, 1), 0.0) == pytest.approx(0.3989423, abs=1e-7)
    assert pdf(DistributionSpec.laplace_kfold(1), 0.0) == pytest.approx(0.5)
    assert pdf(DistributionSpec.exponential(1), -1.0) == 0.0


def test_kfold_two_matches_closed_form():
    w = np.linspace(-8, 8, 161)
    expected = (1 + np.abs(w)) * np.exp(-np.abs(w)) / 4
    np.testing.assert_allclose(standard_laplace_kfold_pdf(2, w), expected, rtol=1e-6)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_kfold_matches_fourier_inversion(k):
    w = np.array([0.0, 1e-9, 0.02, 0.03, 0.04, 0.1, 0.5, 1.0, 2.5, 6.0])
    expected = [_fourier_kfold(k, float(v)) for v in w]
    values = standard_laplace_kfold_pdf(k, w)
    assert np.all(np.isfinite(values))
    np.testing.assert_allclose(values, expected, rtol=1e-6, atol=1e-12)
    np.testing.assert_allclose(
        standard_laplace_kfold_pdf(k, 0.0),
        math.gamma(k - 0.5) / (2 * math.sqrt(math.pi) * math.gamma(k)),
    )


@pytest.mark.parametrize("k", [1, 4, 6])
def test_kfold_moments(k):
    sd = math.sqrt(2 * k)
    w = np.linspace(-20 * sd, 20 * sd, 40001)
    f = pdf(DistributionSpec.laplace_kfold(k), w)
    assert integrate.trapezoid(f, w) == pytest.approx(1, abs=1e-5)
    assert integrate.trapezoid(w * w * f, w) == pytest.approx(2 * k, rel=1e-4)
    assert standard_laplace_kfold_pdf(k, np.inf) == 0


@pytest.mark.parametrize(
    "spec",
    [
        DistributionSpec.normal(1, 2),
        DistributionSpec.laplace(-1, 0.5),
        DistributionSpec.laplace_kfold(3, loc=2, scale=0.5),
        DistributionSpec.mixture(
            [DistributionSpec.normal(-3, 1), DistributionSpec.normal(3, 1)]
        ),
    ],
    ids=repr,
)
def test_pdf_symmetry(spec):
    y = np.linspace(-6, 6, 121)
    np.testing.assert_allclose(pdf(spec, y), pdf(spec, 2 * spec.mean - y), rtol=1e-9)


def test_convolution_of_normals_is_normal():
    spec = DistributionSpec.convolution(
        DistributionSpec.normal(0, 1), DistributionSpec.normal(1, 2)
    )
    y = np.linspace(1 - 3 * math.sqrt(5), 1 + 3 * math.sqrt(5), 101)
    expected = DistributionSpec.normal(1, math.sqrt(5)).pdf(y)
    np.testing.assert_allclose(pdf(spec, y), expected, rtol=1e-6)


def test_convolution_with_singular_component_integrates_to_one():
    spec = DistributionSpec.convolution(
        DistributionSpec.chi_square(1.5), DistributionSpec.normal(0, 1)
    )
    y = np.linspace(-10, 30, 8001)
    values = spec.pdf(y)
    assert np.all(values >= 0)
    assert integrate.trapezoid(values, y) == pytest.approx(1, abs=1e-4)


def test_pdf_is_nonnegative_and_integrates():
    for spec in [
        DistributionSpec.gamma(4, 1),
        DistributionSpec.weibull(4, 12.44),
        DistributionSpec.gumbel(-12, math.sqrt(6) / math.pi),
        DistributionSpec.scaled_chi_square(3, math.sqrt(6)),
    ]:
        y = np.linspace(spec.mean - 12 * spec.std, spec.mean + 12 * spec.std, 20001)
        values = pdf(spec, y)
        assert np.all(values >= 0)
        assert integrate.trapezoid(values, y) == pytest.approx(1, abs=1e-4)
