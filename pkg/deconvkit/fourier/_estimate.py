from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np
import numpy.typing as npt
import pandas as pd

from .._typing import ComplexArray, FloatArray, Self
from ._grid import TGrid

Number = Union[int, float, complex]


class FourierEstimate:
    """A complex function tabulated on a TGrid."""

    def __init__(self, grid: TGrid, values: npt.ArrayLike) -> None:
        v = np.asarray(values, dtype=np.complex128)
        if v.shape != (grid.K,):
            raise ValueError(f"Expected {grid.K} values, got shape {v.shape}")
        self._grid = grid
        self._values = v

    @property
    def grid(self) -> TGrid:
        return self._grid

    @property
    def t(self) -> FloatArray:
        return self._grid.values

    @property
    def values(self) -> ComplexArray:
        return self._values

    @property
    def gamma(self) -> float:
        """The largest |t| of the grid."""
        return self._grid.t_max

    @property
    def at_zero(self) -> complex:
        return complex(self._values[self._grid.zero_index])

    def modulus(self) -> FloatArray:
        return np.abs(self._values)

    def conj(self) -> Self:
        return self.__class__(self._grid, np.conj(self._values))

    def restrict(self, R: int) -> Self:
        """The values on the 2R+1 points around t = 0.

        Raises
        ------
        WindowError
            If R < 1 or R exceeds the grid.
        """
        sub = self._grid.window(R)
        z = self._grid.zero_index
        return self.__class__(sub, self._values[z - R : z + R + 1])

    def _check_grid(self, other: FourierEstimate) -> None:
        if other.grid != self._grid:
            raise ValueError(f"Grids differ: {self._grid!r} and {other.grid!r}")

    def __add__(self, other: FourierEstimate) -> Self:
        if not isinstance(other, FourierEstimate):
            return NotImplemented
        self._check_grid(other)
        return self.__class__(self._grid, self._values + other.values)

    def __mul__(self, scalar: Number) -> Self:
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return self.__class__(self._grid, self._values * scalar)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Self:
        return self.__class__(self._grid, self._values**n)

    def to_frame(self) -> pd.DataFrame:
        """A table with columns t, re, im and modulus."""
        return pd.DataFrame(
            {
                "t": self.t,
                "re": self._values.real,
                "im": self._values.imag,
                "modulus": self.modulus(),
            }
        )

    def to_csv(self, path: str | Path) -> None:
        self.to_frame()[["t", "re", "im"]].to_csv(path, index=False)

    def __repr__(self) -> str:
        return f"FourierEstimate({self._grid!r})"


