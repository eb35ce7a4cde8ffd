from __future__ import annotations

import math

import numpy as np
import pytest

from deconvkit.baselines import bartlett_damping, cutoff_frequency, kernel_ft
from deconvkit.baselines._kernels import kernel_grid, safe_quotient, smoothed_inverse
from deconvkit.distributions import DistributionSpec
from deconvkit.fourier import evaluate_empirical


def test_sinc_kernel_is_an_indicator():
    t = np.array([-1.5, -1.0, 0.0, 0.5, 1.0, 2.0])
    np.testing.assert_array_equal(kernel_ft(t, "sinc"), [0, 1, 1, 1, 1, 0])


def test_quartic_kernel():
    t = np.array([-2.0, 0.0, 0.5, 1.0])
    np.testing.assert_allclose(kernel_ft(t, "quartic"), [0, 1, 0.75**3, 0])


def test_unknown_kernel():
    with pytest.raises(ValueError, match="kernel must be one of"):
        kernel_ft([0.0], "epanechnikov")  # type: ignore[arg-type]


def test_bartlett_damping():
    d = bartlett_damping([0.0, 1.0, -1.0, 2.0, 3.0, -5.0], M=2.0)
    np.testing.assert_allclose(d, [1, 0.5, 0.5, 0, 0, 0])
    with pytest.raises(ValueError):
        bartlett_damping([0.0], M=0)


def test_cutoff_frequency_of_two_point_sample():
    # the empirical transform of ±1 is cos(t), which first drops below
    # n^{-1/2} = 0.1 between 1.47 (0.1006) and 1.48 (0.0907)
    sample = np.repeat([-1.0, 1.0], 50)
    assert cutoff_frequency(sample) == pytest.approx(1.48)


def test_cutoff_frequency_of_normal_sample(normal_sample):
    cutoff = cutoff_frequency(normal_sample)
    threshold = normal_sample.size**-0.5
    t = np.arange(1, int(round(cutoff / 0.01)) + 1) * 0.01
    modulus = np.abs(evaluate_empirical(normal_sample, t))
    assert modulus[-1] < threshold
    assert np.all(modulus[:-1] >= threshold)
    # e^{-t²/2} is still 6 n^{-1/2} at t = 1.8, far above the sampling noise
    assert cutoff > 1.8


def test_cutoff_frequency_without_decay():
    assert cutoff_frequency(np.zeros(50), t_stop=5.0) == pytest.approx(5.0)


def test_smoothed_inverse_of_constant():
    h = 0.5
    grid = kernel_grid(h)
    y = np.array([0.0, 1.0, 2.5])
    density, residual = smoothed_inverse(grid, np.ones(grid.K), y, kernel="sinc")
    # (1/2π)∫_{-1/h}^{1/h} e^{-ity} dt = sin(y/h)/(πy)
    expected = [1 / (math.pi * h), math.sin(2) / math.pi, math.sin(5) / (2.5 * math.pi)]
    np.testing.assert_allclose(density, expected, atol=1e-4)
    assert residual < 1e-9


def test_smoothed_inverse_recovers_density():
    h = 0.2
    grid = kernel_grid(h)
    spec = DistributionSpec.normal(0, 1)
    y = np.linspace(-3, 3, 13)
    density, _ = smoothed_inverse(grid, spec.cf(grid.values), y, kernel="sinc")
    np.testing.assert_allclose(density, spec.pdf(y), atol=0.01)


def test_kernel_grid_validation():
    with pytest.raises(ValueError, match="bandwidth"):
        kernel_grid(0.0)


def test_safe_quotient():
    q, n_bad = safe_quotient([1.0, 2.0, 0.0], [0.0, 1.0, 0.0])
    np.testing.assert_array_equal(q, [0, 2, 0])
    assert n_bad == 2
