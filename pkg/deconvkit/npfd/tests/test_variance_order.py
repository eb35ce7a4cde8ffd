from __future__ import annotations

import numpy as np
import pytest

from deconvkit.distributions import DistributionSpec
from deconvkit.npfd import VarianceOrderError, check_variance_order


def test_same_sample_rejected(normal_sample):
    with pytest.raises(VarianceOrderError, match="variance order"):
        check_variance_order(normal_sample, normal_sample)


def test_shifted_sample_rejected(normal_sample):
    with pytest.raises(VarianceOrderError):
        check_variance_order(normal_sample, normal_sample + 3.7)


def test_ordered_ok():
    check_variance_order([-1.0, 1.0], [-np.sqrt(2), np.sqrt(2)])


def test_reversed_normals_rejected():
    x = DistributionSpec.normal(0, variance=2).sample(500, 1)
    z = DistributionSpec.normal(0, 1).sample(500, 2)
    with pytest.raises(VarianceOrderError):
        check_variance_order(x, z)


def test_known_variance(normal_sample):
    check_variance_order(0.5, normal_sample)
    with pytest.raises(VarianceOrderError):
        check_variance_order(4.0, normal_sample)
