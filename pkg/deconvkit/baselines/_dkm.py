from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt
from scipy import integrate, special

from .._typing import FloatArray
from .._util import as_sample
from ..distributions import DistributionSpec, Family, UnsupportedFamilyError
from ..fourier import evaluate_empirical
from ..npfd import check_variance_order
from ._kernels import (
    N_T,
    Kernel,
    kernel_ft,
    kernel_grid,
    safe_quotient,
    smoothed_inverse,
)
from ._result import BaselineResult

logger = logging.getLogger(__name__)

SUPPORTED_ERRORS = (Family.NORMAL, Family.LAPLACE)

# μ₂ = -φ_K''(0) and ∫u⁴φ_K(u)² du for φ_K(u) = (1 - u²)³ on |u| <= 1
_QUARTIC_MU2 = 6.0
_QUARTIC_U4 = float(special.beta(2.5, 7))


def _check_error(error: DistributionSpec) -> None:
    if error.family not in SUPPORTED_ERRORS:
        raise UnsupportedFamilyError(error.family, "deconvolution kernels")


def dkm_bandwidth(z: npt.ArrayLike, error: DistributionSpec) -> float:
    """Rule-of-thumb bandwidth for the deconvolution kernel estimator.

    Normal errors get h = σ_X·(log(n)/2)^{-1/2}, the rate at which 1/φ_X(t)
    stays polynomial in n on |t| <= 1/h. Laplace errors get the h that
    minimizes the asymptotic MISE A·h⁴ + B·h⁻⁵ of the quartic kernel when
    Y is Normal with variance s²_z - σ²_X, which gives h ∝ n^{-1/9}.

    Raises
    ------
    VarianceOrderError
        If `z` does not vary more than the error.
    """
    _check_error(error)
    z_arr = as_sample(z, name="z")
    check_variance_order(error.variance, z_arr)
    n = z_arr.size
    if error.family == Family.NORMAL:
        return error.std / math.sqrt(max(math.log(n), 1.0) / 2)
    s_y = math.sqrt(float(np.var(z_arr)) - error.variance)
    # R(f'') = 3/(8√π s⁵) for a Normal target; b⁴ = σ_X⁴/4 for Laplace scale b
    a = _QUARTIC_MU2**2 * 3 / (8 * math.sqrt(math.pi) * s_y**5) / 4
    b = error.variance**2 / 4 * _QUARTIC_U4 / (2 * math.pi * n)
    return (5 * b / (4 * a)) ** (1 / 9)


def dkm_kernel(
    x: npt.ArrayLike,
    error: DistributionSpec,
    bandwidth: float,
    kernel: Kernel = "quartic",
    n_t: int = N_T,
) -> FloatArray:
    """The deconvolution kernel L(x) = (1/2π)∫ e^{-iux}·φ_K(u)/φ_X(u/h) du."""
    _check_error(error)
    u = np.linspace(-1, 1, n_t)
    ratio, _ = safe_quotient(kernel_ft(u, kernel), error.cf(u / bandwidth))
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    integrand = np.exp(-1j * np.outer(x_arr, u)) * ratio
    return integrate.trapezoid(integrand, u, axis=1).real / (2 * math.pi)


def dkm_deconvolve(
    z: npt.ArrayLike,
    error: DistributionSpec,
    ygrid: npt.ArrayLike,
    bandwidth: float | None = None,
    kernel: Kernel = "quartic",
) -> BaselineResult:
    """Deconvolution kernel density estimate for a known error law.

    f̂(y) = (1/(n·h))·Σ_j L((y - z_j)/h), evaluated through its Fourier form
    (1/2π)∫ φ_K(th)·φ̂_Z(t)/φ_X(t)·e^{-ity} dt. The default kernel has
    φ_K(u) = (1 - u²)³ on |u| <= 1 for both error families.

    Raises
    ------
    UnsupportedFamilyError
        If the error is neither Normal nor Laplace.
    VarianceOrderError
        If `bandwidth` is None and `z` does not vary more than the error.
    """
    _check_error(error)
    z_arr = as_sample(z, name="z")
    h = dkm_bandwidth(z_arr, error) if bandwidth is None else float(bandwidth)

    grid = kernel_grid(h)
    q, _ = safe_quotient(evaluate_empirical(z_arr, grid.values), error.cf(grid.values))
    density, residual = smoothed_inverse(grid, q, ygrid, kernel)
    logger.info("DKM with %s kernel, bandwidth h=%g", kernel, h)
    diagnostics = {"bandwidth": h, "kernel": kernel, "max_imag_residual": residual}
    y = np.asarray(ygrid, dtype=np.float64)
    return BaselineResult("dkm", y, density, diagnostics)
