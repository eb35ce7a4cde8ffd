from __future__ import annotations

import numpy as np

from .._typing import FloatArray, Self


class WindowError(ValueError):
    """A restriction window around t = 0 is empty or does not fit the grid."""


class TGrid:
    """K equidistant points symmetric around t = 0, from -t_max to t_max.

    The points are integer multiples of the spacing, so t_k = -t_{K+1-k}
    holds exactly and the middle point is exactly 0.
    """

    def __init__(self, K: int = 401, t_max: float = 32.0) -> None:
        if K < 3 or K % 2 != 1:
            raise ValueError(f"K must be odd and >= 3, got {K}")
        if not t_max > 0:
            raise ValueError(f"t_max must be positive, got {t_max}")
        self._K = int(K)
        self._t_max = float(t_max)
        half = self._K // 2
        self._values = np.arange(-half, half + 1) * (self._t_max / half)
        self._values.setflags(write=False)

    @property
    def K(self) -> int:
        return self._K

    @property
    def t_max(self) -> float:
        return self._t_max

    @property
    def values(self) -> FloatArray:
        return self._values

    @property
    def spacing(self) -> float:
        return self._t_max / (self._K // 2)

    @property
    def zero_index(self) -> int:
        """Index of t = 0, (K-1)/2 counting from 0."""
        return self._K // 2

    def expanded(self, factor: float = 2.0) -> Self:
        """The grid with the same K and t_max scaled by `factor`."""
        return self.__class__(self._K, self._t_max * factor)

    def window(self, R: int) -> Self:
        """The 2R+1 central points, covering [-R·spacing, R·spacing]."""
        if R < 1:
            raise WindowError(f"Window half-width must be >= 1, got R={R}")
        if R > self.zero_index:
            raise WindowError(f"R={R} exceeds the grid half-width {self.zero_index}")
        return self.__class__(2 * R + 1, R * self.spacing)

    def __len__(self) -> int:
        return self._K

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TGrid):
            return False
        return self._K == other._K and self._t_max == other._t_max

    def __hash__(self) -> int:
        return hash((self._K, self._t_max))

    def __repr__(self) -> str:
        return f"TGrid(K={self._K}, t_max={self._t_max:g})"
