from __future__ import annotations

import logging
from typing import Callable, Iterator, Union

import numpy as np
import numpy.typing as npt

from .._typing import ComplexArray
from .._util import as_sample
from ..density import DensityFit
from ._estimate import FourierEstimate
from ._grid import TGrid

logger = logging.getLogger(__name__)

Density = Union[DensityFit, Callable[[np.ndarray], npt.ArrayLike]]

DEFAULT_POINTS = 100
# bound on the size of one block of the t × s phase matrix
_BLOCK_ELEMENTS = 1 << 22


def _blocks(n_rows: int, n_cols: int) -> Iterator[slice]:
    step = max(1, _BLOCK_ELEMENTS // max(n_cols, 1))
    for start in range(0, n_rows, step):
        yield slice(start, min(start + step, n_rows))


def _cos_sin_sums(
    t: np.ndarray, s: np.ndarray, weights: np.ndarray | None
) -> tuple[np.ndarray, np.ndarray]:
    """Σ_j w_j cos(t s_j) and Σ_j w_j sin(t s_j), or the means if unweighted."""
    re = np.empty(t.size)
    im = np.empty(t.size)
    for block in _blocks(t.size, s.size):
        phase = np.outer(t[block], s)
        if weights is None:
            re[block] = np.cos(phase).mean(axis=1)
            im[block] = np.sin(phase).mean(axis=1)
        else:
            re[block] = np.cos(phase) @ weights
            im[block] = np.sin(phase) @ weights
    return re, im


def evaluate_mc(
    density: Density,
    interval: tuple[float, float],
    t: npt.ArrayLike,
    n_points: int = DEFAULT_POINTS,
) -> ComplexArray:
    """Monte Carlo Fourier transform of `density` at arbitrary `t`.

    ((v-u)/ℓ)·Σ_j f(s_j)e^{i s_j t}, with ℓ = `n_points` equidistant s_j
    from u to v.
    """
    u, v = float(interval[0]), float(interval[1])
    if not v > u:
        raise ValueError(f"Need u < v, got [{u}, {v}]")
    if n_points < 10:
        raise ValueError(f"Need at least 10 integration points, got {n_points}")
    s = np.linspace(u, v, n_points)
    f = np.asarray(density(s), dtype=np.float64)
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    re, im = _cos_sin_sums(t_arr, s, f * ((v - u) / n_points))
    return re + 1j * im


def evaluate_empirical(sample: npt.ArrayLike, t: npt.ArrayLike) -> ComplexArray:
    """(1/n)·Σ_j e^{i t z_j} at arbitrary `t`."""
    z = as_sample(sample)
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    re, im = _cos_sin_sums(t_arr, z, None)
    return re + 1j * im


def mc_fourier(
    density: Density,
    interval: tuple[float, float],
    grid: TGrid,
    n_points: int = DEFAULT_POINTS,
) -> FourierEstimate:
    """Fourier transform of a density by Monte Carlo integration over `interval`.

    Parameters
    ----------
    density
        A fitted density, or any function that evaluates a density on an array.
    interval
        The integration range [u, v]; the density is taken to be 0 outside it.
    grid
        Where to evaluate the transform.
    n_points
        ℓ, the number of equidistant integration points.
    """
    values = evaluate_mc(density, interval, grid.values, n_points)
    logger.debug(
        "MC transform on %r over [%g, %g] with %d points, value at 0 = %.6g",
        grid,
        interval[0],
        interval[1],
        n_points,
        values[grid.zero_index].real,
    )
    return FourierEstimate(grid, values)


def empirical_ft(sample: npt.ArrayLike, grid: TGrid) -> FourierEstimate:
    """The empirical Fourier transform of a sample; exactly 1 at t = 0."""
    return FourierEstimate(grid, evaluate_empirical(sample, grid.values))
