from __future__ import annotations

from typing import Callable

import numpy as np
import pytest

from deconvkit.distributions import DistributionSpec

# we want to have pytest assert introspection in the helpers
pytest.register_assert_rewrite("deconvkit.tests.util")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def sample_factory() -> Callable[..., np.ndarray]:
    """Draw reproducible samples: sample_factory(spec, n, seed=0)."""

    def factory(spec: DistributionSpec, n: int, seed: int = 0) -> np.ndarray:
        return spec.sample(n, seed)

    return factory


@pytest.fixture
def normal_sample() -> np.ndarray:
    return DistributionSpec.normal(0, 1).sample(1000, 11)


@pytest.fixture
def gamma_sample() -> np.ndarray:
    return DistributionSpec.gamma(4, 1).sample(1000, 12)
