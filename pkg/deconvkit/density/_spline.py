from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .._typing import FloatArray


class NaturalSplineBasis:
    """Natural cubic spline basis with an intercept column.

    The basis is cubic between the knots and linear outside the boundary
    knots. It is built from truncated powers on the standardized coordinate
    u = (x - lo) / (hi - lo), so it is unchanged by shifting and rescaling the
    data together with its knots.
    """

    def __init__(self, knots: npt.ArrayLike, lo: float, hi: float) -> None:
        interior = np.asarray(knots, dtype=np.float64)
        if not hi > lo:
            raise ValueError(f"Need lo < hi, got [{lo}, {hi}]")
        if np.any(interior <= lo) or np.any(interior >= hi):
            raise ValueError("Interior knots must lie strictly inside (lo, hi)")
        if np.any(np.diff(interior) <= 0):
            raise ValueError("Knots must be strictly increasing")
        self._lo = float(lo)
        self._hi = float(hi)
        self._interior = interior
        self._xi = self._standardize(np.concatenate([[lo], interior, [hi]]))

    @property
    def knots(self) -> FloatArray:
        """The interior knots, in data coordinates."""
        return self._interior

    @property
    def n_functions(self) -> int:
        return int(self._xi.size)

    def _standardize(self, x: np.ndarray) -> np.ndarray:
        return (x - self._lo) / (self._hi - self._lo)

    def __call__(self, x: npt.ArrayLike) -> FloatArray:
        """The design matrix, one row per point in `x`."""
        u = self._standardize(np.atleast_1d(np.asarray(x, dtype=np.float64)))
        xi = self._xi
        last = xi[-1]

        def d(k: int) -> np.ndarray:
            return (
                np.maximum(u - xi[k], 0) ** 3 - np.maximum(u - last, 0) ** 3
            ) / (last - xi[k])

        columns = [np.ones_like(u), u]
        d_last = d(xi.size - 2)
        for k in range(xi.size - 2):
            columns.append(d(k) - d_last)
        return np.column_stack(columns)
