from __future__ import annotations

import math

import numpy as np
import pytest

from deconvkit.distributions import (
    DistributionSpec,
    ParameterError,
    sample,
    stratified_counts,
)

FAMILIES = [
    DistributionSpec.normal(1, 2),
    DistributionSpec.laplace(-1, 0.5),
    DistributionSpec.exponential(0.5),
    DistributionSpec.gamma(4, 2),
    DistributionSpec.weibull(4, 12.44),
    DistributionSpec.gumbel(-12, math.sqrt(6) / math.pi),
    DistributionSpec.chi_square(3),
    DistributionSpec.scaled_chi_square(3, math.sqrt(6)),
    DistributionSpec.laplace_kfold(3),
    DistributionSpec.mixture(
        [DistributionSpec.normal(-3, 1), DistributionSpec.normal(3, 1)]
    ),
    DistributionSpec.convolution(
        DistributionSpec.chi_square(1.5), DistributionSpec.normal(0, 1)
    ),
]


@pytest.mark.parametrize("spec", FAMILIES, ids=repr)
def test_sample_variance_matches_analytic(spec):
    n = 100_000
    x = sample(spec, n, seed=3)
    assert x.shape == (n,)
    centered = x - x.mean()
    s2 = centered.var()
    m4 = np.mean(centered**4)
    se = math.sqrt((m4 - s2**2) / n)
    assert abs(s2 - spec.variance) < 5 * se
    assert abs(x.mean() - spec.mean) < 5 * math.sqrt(s2 / n)


def test_laplace_kfold_one_moments():
    n = 1_000_000
    x = sample(DistributionSpec.laplace_kfold(1), n, seed=42)
    # Laplace(0, 1): variance 2, fourth moment 24
    assert abs(x.mean()) < 4 * math.sqrt(2 / n)
    assert abs(x.var() - 2) < 4 * math.sqrt((24 - 4) / n)


def test_sample_is_deterministic():
    spec = DistributionSpec.gamma(4, 1)
    a = sample(spec, 50, seed=7)
    b = spec.sample(50, 7)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, sample(spec, 50, seed=8))


def test_sample_with_seed_sequence():
    spec = DistributionSpec.normal()
    ss = np.random.SeedSequence(1, spawn_key=(4,))
    np.testing.assert_array_equal(sample(spec, 5, ss), sample(spec, 5, ss))


@pytest.mark.parametrize("n", [0, -1, 2.5])
def test_sample_rejects_bad_n(n):
    with pytest.raises(ParameterError):
        sample(DistributionSpec.normal(), n)


def test_convolution_variance_adds():
    a = DistributionSpec.gamma(4, 1)
    b = DistributionSpec.exponential(0.5)
    z = sample(DistributionSpec.convolution(a, b), 200_000, seed=1)
    assert z.var() == pytest.approx(a.variance + b.variance, rel=0.03)


def test_stratified_mixture_assigns_draws_in_order():
    n = 500
    spec = DistributionSpec.mixture(
        [DistributionSpec.normal(float(i), 1e-6) for i in range(n)]
    )
    x = sample(spec, n, seed=0, stratified=True)
    np.testing.assert_array_equal(np.round(x), np.arange(n))


def test_stratified_counts():
    assert stratified_counts([0.5, 0.5], 3) == [2, 1]
    assert stratified_counts([0.2, 0.3, 0.5], 10) == [2, 3, 5]
    assert sum(stratified_counts([1 / 7] * 7, 100)) == 100
