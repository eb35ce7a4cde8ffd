from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt

from .._typing import FloatArray
from .._util import as_sample
from ._config import NpfdConfig
from ._deconvolve import npfd_deconvolve
from ._result import NpfdResult


class LengthMismatchError(ValueError):
    """Replicate columns must have one entry per unit."""


def _columns(z1: npt.ArrayLike, z2: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
    a = as_sample(z1, name="z1")
    b = as_sample(z2, name="z2")
    if a.size != b.size:
        raise LengthMismatchError(
            f"Replicate columns differ in length: {a.size} and {b.size}"
        )
    return a, b


def replicates_to_error_sample(z1: npt.ArrayLike, z2: npt.ArrayLike) -> FloatArray:
    """(z1 - z2)/√2, a sample from the error law when errors are symmetric.

    Raises
    ------
    LengthMismatchError
        If the columns have different lengths.
    """
    a, b = _columns(z1, z2)
    return (a - b) / math.sqrt(2)


def pooled_replicates(z1: npt.ArrayLike, z2: npt.ArrayLike) -> FloatArray:
    """Both replicate columns as one sample of Z."""
    a, b = _columns(z1, z2)
    return np.concatenate([a, b])


def npfd_replicates(
    z1: npt.ArrayLike, z2: npt.ArrayLike, config: NpfdConfig | None = None
) -> NpfdResult:
    """Deconvolve two replicate measurements per unit.

    The error sample comes from the scaled replicate differences and the
    mixed sample pools both columns.
    """
    return npfd_deconvolve(
        replicates_to_error_sample(z1, z2), pooled_replicates(z1, z2), config
    )
