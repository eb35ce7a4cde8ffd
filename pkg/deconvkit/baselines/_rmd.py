from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from .._typing import FloatArray
from ..fourier import evaluate_empirical
from ..npfd import pooled_replicates
from ..npfd._replicates import _columns
from ._kernels import (
    Kernel,
    cutoff_frequency,
    kernel_grid,
    safe_quotient,
    smoothed_inverse,
)
from ._result import BaselineResult

logger = logging.getLogger(__name__)

MIN_UNITS = 20
DEFAULT_RIDGE = 0.01


def replicate_error_ft(
    z1: npt.ArrayLike, z2: npt.ArrayLike, t: npt.ArrayLike
) -> FloatArray:
    """sqrt|mean_j cos(t(z_j1 - z_j2))|, a symmetric error's |transform|."""
    a, b = _columns(z1, z2)
    return np.sqrt(np.abs(evaluate_empirical(a - b, t).real))


def rmd_deconvolve(
    z1: npt.ArrayLike,
    z2: npt.ArrayLike,
    ygrid: npt.ArrayLike,
    bandwidth: float | None = None,
    ridge: float = DEFAULT_RIDGE,
    kernel: Kernel = "quartic",
) -> BaselineResult:
    """Deconvolution from two replicate measurements per unit.

    f̂(y) = (1/2π)∫ φ_K(th)·φ̂_Z(t)/(φ̂_X(t) + ρ)·e^{-ity} dt, with φ̂_Z the
    empirical transform of both columns pooled and every unit weighted
    equally. The error law is assumed symmetric around 0.

    Raises
    ------
    LengthMismatchError
        If the columns differ in length.
    ValueError
        With fewer than 20 units or a negative ridge.
    """
    a, b = _columns(z1, z2)
    if a.size < MIN_UNITS:
        raise ValueError(f"Need at least {MIN_UNITS} replicated units, got {a.size}")
    if ridge < 0:
        raise ValueError(f"ridge must be >= 0, got {ridge}")
    pooled = pooled_replicates(a, b)
    h = 1 / cutoff_frequency(pooled) if bandwidth is None else float(bandwidth)
    grid = kernel_grid(h)
    phi_x = replicate_error_ft(a, b, grid.values)
    q, _ = safe_quotient(evaluate_empirical(pooled, grid.values), phi_x + ridge)
    density, residual = smoothed_inverse(grid, q, ygrid, kernel)
    logger.info("RMD with bandwidth h=%g, ridge %g", h, ridge)
    diagnostics = {
        "bandwidth": h,
        "ridge": ridge,
        "kernel": kernel,
        "min_error_ft": float(phi_x.min()),
        "max_imag_residual": residual,
    }
    y = np.asarray(ygrid, dtype=np.float64)
    return BaselineResult("rmd", y, density, diagnostics)
