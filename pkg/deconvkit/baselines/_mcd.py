from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from .._util import as_sample
from ..fourier import evaluate_empirical
from ._kernels import (
    Kernel,
    cutoff_frequency,
    kernel_grid,
    safe_quotient,
    smoothed_inverse,
)
from ._result import BaselineResult

logger = logging.getLogger(__name__)


def mcd_bandwidth(z: npt.ArrayLike) -> float:
    """1/t*, with t* the first t where |φ̂_Z(t)| < n_z^{-1/2}."""
    return 1 / cutoff_frequency(as_sample(z, name="z"))


def mcd_deconvolve(
    x: npt.ArrayLike,
    z: npt.ArrayLike,
    ygrid: npt.ArrayLike,
    bandwidth: float | None = None,
    kernel: Kernel = "quartic",
) -> BaselineResult:
    """Kernel-smoothed quotient of empirical transforms with a hard cutoff.

    f̂(y) = (1/2π)∫ φ_K(th)·φ̂_Z(t)/φ̂_X(t)·1{|φ̂_X(t)| >= n_x^{-1/2}}·e^{-ity} dt.
    The same bandwidth rule serves whether or not the error law is known,
    so the default h only looks at z.
    """
    x_arr = as_sample(x, name="x")
    z_arr = as_sample(z, name="z")
    h = mcd_bandwidth(z_arr) if bandwidth is None else float(bandwidth)
    threshold = x_arr.size**-0.5
    grid = kernel_grid(h)
    phi_x = evaluate_empirical(x_arr, grid.values)
    keep = np.abs(phi_x) >= threshold
    q, _ = safe_quotient(evaluate_empirical(z_arr, grid.values), phi_x)
    density, residual = smoothed_inverse(grid, np.where(keep, q, 0), ygrid, kernel)
    logger.info("MCD with bandwidth h=%g, indicator threshold %g", h, threshold)
    diagnostics = {
        "bandwidth": h,
        "kernel": kernel,
        "threshold": threshold,
        "kept_fraction": float(keep.mean()),
        "max_imag_residual": residual,
    }
    y = np.asarray(ygrid, dtype=np.float64)
    return BaselineResult("mcd", y, density, diagnostics)
