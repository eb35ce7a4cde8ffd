from __future__ import annotations

import numpy as np
import numpy.typing as npt
from scipy import integrate

from deconvkit.distributions import DistributionSpec


def integrated_squared_error(
    values: npt.ArrayLike, grid: npt.ArrayLike, truth: DistributionSpec
) -> float:
    values = np.asarray(values, dtype=float)
    return float(integrate.trapezoid((values - truth.pdf(grid)) ** 2, grid))


def assert_conjugate_symmetric(values: npt.ArrayLike, atol: float = 1e-9) -> None:
    values = np.asarray(values)
    assert values.size % 2 == 1
    np.testing.assert_allclose(values, np.conj(values[::-1]), rtol=0, atol=atol)


def assert_is_density(
    values: npt.ArrayLike, grid: npt.ArrayLike, *, atol: float = 0.02
) -> None:
    values = np.asarray(values, dtype=float)
    assert np.all(np.isfinite(values))
    assert np.all(values >= 0)
    assert abs(integrate.trapezoid(values, grid) - 1) < atol
