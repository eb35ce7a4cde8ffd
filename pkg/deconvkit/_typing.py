from __future__ import annotations

from typing import Protocol, Union

import numpy as np
import numpy.typing as npt
import pandas as pd

try:
    from typing import Self as Self
except ImportError:
    from typing_extensions import Self as Self

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]
Seed = Union[int, np.random.SeedSequence, np.random.Generator, None]
"""Anything accepted by numpy.random.default_rng()."""


class DensityCurve(Protocol):
    """Anything holding a density tabulated on a grid, e.g. an NpfdResult."""

    @property
    def ygrid(self) -> FloatArray: ...

    @property
    def density(self) -> FloatArray: ...

    def to_frame(self) -> pd.DataFrame: ...
