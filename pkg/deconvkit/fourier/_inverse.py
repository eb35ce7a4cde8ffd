from __future__ import annotations

import dataclasses
import logging
import math
from typing import Literal

import numpy as np
import numpy.typing as npt

from .._typing import FloatArray
from ._estimate import FourierEstimate
from ._transform import _blocks

logger = logging.getLogger(__name__)

Normalization = Literal["padded", "riemann", "trapezoid"]
NORMALIZATIONS = ("padded", "riemann", "trapezoid")


@dataclasses.dataclass(frozen=True)
class InversionResult:
    """A density recovered from its Fourier transform."""

    density: FloatArray
    max_imag_residual: float
    """The largest |imaginary part| before it was discarded."""
    normalization: Normalization = "padded"


def _weights(estimate: FourierEstimate, normalization: Normalization) -> np.ndarray:
    K = estimate.grid.K
    gamma = estimate.gamma
    if normalization == "padded":
        return np.full(K, gamma / (math.pi * (K + 2)))
    if normalization == "riemann":
        return np.full(K, (2 * gamma / K) / (2 * math.pi))
    if normalization == "trapezoid":
        w = np.full(K, estimate.grid.spacing)
        w[[0, -1]] /= 2
        return w / (2 * math.pi)
    raise ValueError(
        f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}"
    )


def mc_inverse(
    estimate: FourierEstimate,
    ygrid: npt.ArrayLike,
    *,
    R: int | None = None,
    normalization: Normalization = "padded",
) -> InversionResult:
    """Invert a Fourier transform onto `ygrid` by direct summation.

    f(y) = Re Σ_k w_k·value(t_k)e^{-i t_k y} over all points of `estimate`,
    or over the 2R+1 points around 0 if `R` is given. With the "padded"
    normalization, w_k = γ/(π(K+2)) for K points spanning [-γ, γ]; "riemann"
    uses (2γ/K)/(2π) and "trapezoid" the composite trapezoid weights over
    2π.

    Raises
    ------
    WindowError
        If `R` is given and the window is empty or larger than the grid.
    """
    if R is not None:
        estimate = estimate.restrict(R)
    y = np.atleast_1d(np.asarray(ygrid, dtype=np.float64))
    w = _weights(estimate, normalization)
    a = estimate.values.real * w
    b = estimate.values.imag * w
    t = estimate.t
    re = np.empty(y.size)
    im = np.empty(y.size)
    # value·e^{-ity} = (a + ib)(cos ty - i sin ty)
    for block in _blocks(y.size, t.size):
        phase = np.outer(y[block], t)
        c, s = np.cos(phase), np.sin(phase)
        re[block] = c @ a + s @ b
        im[block] = c @ b - s @ a
    residual = float(np.max(np.abs(im))) if im.size else 0.0
    logger.debug(
        "Inverted %r onto %d points, max imaginary residual %.3g",
        estimate.grid,
        y.size,
        residual,
    )
    return InversionResult(re, residual, normalization)
