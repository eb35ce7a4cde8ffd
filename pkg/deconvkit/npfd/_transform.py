from __future__ import annotations

import dataclasses
import math

import numpy as np
import numpy.typing as npt

from .._typing import FloatArray
from .._util import as_sample


@dataclasses.dataclass(frozen=True)
class TransformConstants:
    """The scale `a` and shifts of the N-power transform.

    b_y = b_z - b_x is the shift the transform implies for the target.
    """

    N: int
    a: float
    b_x: float
    b_z: float

    @property
    def b_y(self) -> float:
        return self.b_z - self.b_x

    def to_dict(self) -> dict[str, float]:
        return {
            "N": self.N,
            "a": self.a,
            "b_x": self.b_x,
            "b_z": self.b_z,
            "b_y": self.b_y,
        }


def power_constants(N: int, mean_x: float, mean_z: float) -> TransformConstants:
    """a = 1/√N and b = (1/N - 1/√N)·mean for each sample."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    a = 1 / math.sqrt(N)
    shift = 1 / N - a
    return TransformConstants(N, a, shift * mean_x, shift * mean_z)


def transform_inputs(
    x: npt.ArrayLike, z: npt.ArrayLike, N: int
) -> tuple[FloatArray, FloatArray, TransformConstants]:
    """Rescale and shift both samples for the N-th power.

    The transformed samples have a mean 1/N times the original one, and
    variance 1/N times the original, so that the N-fold sum of the
    transformed target has the mean and variance of the target itself.

    Returns
    -------
    x̃, z̃, constants
    """
    x_arr = as_sample(x, name="x")
    z_arr = as_sample(z, name="z")
    c = power_constants(N, float(np.mean(x_arr)), float(np.mean(z_arr)))
    if N == 1:
        return x_arr, z_arr, c
    return c.a * x_arr + c.b_x, c.a * z_arr + c.b_z, c
