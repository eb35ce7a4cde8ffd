from __future__ import annotations

import logging
from typing import Literal

import numpy as np
import numpy.typing as npt

from .._typing import ComplexArray, FloatArray
from ..fourier import FourierEstimate, TGrid, evaluate_empirical, mc_inverse

logger = logging.getLogger(__name__)

Kernel = Literal["sinc", "quartic"]
KERNELS = ("sinc", "quartic")

# points of the t grid the kernel estimators integrate over
N_T = 801


def kernel_ft(t: npt.ArrayLike, kernel: Kernel = "quartic") -> FloatArray:
    """The Fourier transform φ_K of a smoothing kernel, supported on [-1, 1].

    "sinc" is the indicator 1{|t| <= 1} (the kernel sin(x)/(πx)), "quartic"
    is (1 - t²)³ on |t| <= 1.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    inside = np.abs(t_arr) <= 1
    if kernel == "sinc":
        return inside.astype(np.float64)
    if kernel == "quartic":
        return np.where(inside, (1 - t_arr**2) ** 3, 0.0)
    raise ValueError(f"kernel must be one of {KERNELS}, got {kernel!r}")


def bartlett_damping(t: npt.ArrayLike, M: float) -> FloatArray:
    """max(0, 1 - |t|/M)."""
    if not M > 0:
        raise ValueError(f"Damping width must be positive, got {M}")
    return np.maximum(0.0, 1 - np.abs(np.asarray(t, dtype=np.float64)) / M)


def cutoff_frequency(
    sample: npt.ArrayLike, *, step: float = 0.01, t_stop: float = 100.0
) -> float:
    """The smallest t > 0 with |φ̂(t)| < n^{-1/2} for the empirical transform.

    The scan runs over multiples of `step` up to `t_stop`, which is returned
    when the modulus never drops below the threshold.
    """
    z = np.asarray(sample, dtype=np.float64)
    t = np.arange(1, int(round(t_stop / step)) + 1) * step
    below = np.flatnonzero(np.abs(evaluate_empirical(z, t)) < z.size**-0.5)
    if below.size == 0:
        logger.warning(
            "Empirical transform never fell below n^-1/2 up to t = %g", t_stop
        )
        return float(t[-1])
    return float(t[below[0]])


def kernel_grid(bandwidth: float, n_t: int = N_T) -> TGrid:
    """The t grid spanning the kernel support |t| <= 1/h."""
    if not bandwidth > 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    return TGrid(n_t, 1 / bandwidth)


def smoothed_inverse(
    grid: TGrid,
    values: npt.ArrayLike,
    ygrid: npt.ArrayLike,
    kernel: Kernel = "quartic",
) -> tuple[FloatArray, float]:
    """(1/2π)∫ e^{-ity}·φ_K(th)·g(t) dt by the trapezoid rule on a kernel grid.

    `values` holds g on `grid`, whose end points are ±1/h. Returns the
    density on `ygrid` and the largest discarded imaginary part.
    """
    u = np.linspace(-1, 1, grid.K)
    smoothed = kernel_ft(u, kernel) * np.asarray(values)
    result = mc_inverse(
        FourierEstimate(grid, smoothed), ygrid, normalization="trapezoid"
    )
    return result.density, result.max_imag_residual


def safe_quotient(
    numerator: npt.ArrayLike, denominator: npt.ArrayLike
) -> tuple[ComplexArray, int]:
    """numerator/denominator with non-finite results replaced by 0.

    Also returns how many were replaced.
    """
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        q = np.asarray(numerator, dtype=np.complex128) / np.asarray(denominator)
    bad = ~np.isfinite(q)
    return np.where(bad, 0, q), int(bad.sum())
