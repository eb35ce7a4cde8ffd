from __future__ import annotations

import dataclasses
import logging
from typing import Callable, Literal
import warnings

import numpy as np
import numpy.typing as npt

from .._util import as_sample
from ..fourier import TGrid
from ._config import NpfdConfig
from ._ft_pair import FourierPair, estimate_ft_pair
from ._quality import DataQualityWarning, check_variance_order
from ._transform import TransformConstants, transform_inputs

logger = logging.getLogger(__name__)

PairFactory = Callable[[int], "tuple[FourierPair, TransformConstants]"]


@dataclasses.dataclass(frozen=True)
class PowerSelection:
    """The outcome of the search for the power N."""

    N: int
    gamma: float
    """The half-width of the integration window [-γ, γ]."""
    R: int
    """γ as a number of scan grid steps from t = 0."""
    grid: TGrid
    """The scan grid γ was found on (possibly widened)."""
    epsilon: float
    delta: float
    pair: FourierPair
    constants: TransformConstants
    q0: complex
    """φ̂_Ỹ(0) before any rescaling."""
    hit_n_max: bool = False
    """No N up to N_max (or the forced power) met the threshold conditions."""
    doublings: int = 0


@dataclasses.dataclass(frozen=True)
class _Scan:
    outcome: Literal["accept", "guard", "margin", "end"]
    index: int
    """Offset from t = 0 where the scan stopped; -1 for "end"."""
    powered: np.ndarray
    """|φ̂_Ỹ|^N on the non-negative half of the grid."""


def _scan(
    pair: FourierPair, N: int, grid: TGrid, scale: complex, epsilon: float, delta: float
) -> _Scan:
    t = grid.values[grid.zero_index :]
    powered = pair.powered_modulus(t, N, scale)
    for i in range(1, t.size):
        # non-finite values trip the guard too
        if not powered[i] <= 1:
            return _Scan("guard", i, powered)
        if powered[i] < epsilon:
            margin = pair.powered_modulus(t[i] + delta, N, scale)[0]
            if margin < epsilon:
                return _Scan("accept", i, powered)
            return _Scan("margin", i, powered)
    return _Scan("end", -1, powered)


def _fallback_offset(scan: _Scan) -> int:
    """Where |φ̂_Ỹ|^N is smallest before the scan stopped."""
    if scan.outcome == "end":
        stop = scan.powered.size
    elif scan.outcome == "margin":
        stop = scan.index + 1
    else:
        stop = scan.index
    if stop <= 1:
        return 1
    return 1 + int(np.argmin(scan.powered[1:stop]))


def rescale_factor(q0: complex, config: NpfdConfig) -> complex:
    """The divisor applied to the quotient: φ̂_Ỹ(0) or 1."""
    if not config.rescale_at_zero:
        return 1.0 + 0j
    if q0 == 0 or not np.isfinite(q0):
        warnings.warn(
            f"Cannot rescale by φ̂(0) = {q0}, leaving the quotient as is",
            DataQualityWarning,
            stacklevel=3,
        )
        return 1.0 + 0j
    return q0


def search_power(
    factory: PairFactory, config: NpfdConfig, epsilon: float
) -> PowerSelection:
    """Find the smallest N whose powered quotient vanishes inside the grid.

    For each candidate N the non-negative half of the scan grid is walked
    from t = 0. The walk stops at the first t where |φ̂_Ỹ|^N exceeds 1
    (try the next N), or falls below ε. In the latter case the point t + δ
    is checked as well: if it is also below ε, N and γ = t are chosen,
    otherwise the next N is tried. If the walk reaches the end of the grid,
    t_max is doubled and the same N is walked again, up to
    `config.max_grid_doublings` times.

    If no N qualifies, the last one is used, with γ where |φ̂_Ỹ|^N was
    smallest, and `hit_n_max` is set.
    """
    powers = [config.power] if config.power is not None else range(1, config.n_max + 1)
    for N in powers:
        pair, constants = factory(N)
        q0 = complex(pair.quotient(0.0)[0])
        scale = rescale_factor(q0, config)
        grid = TGrid(config.K, config.t_max)
        doublings = 0
        while True:
            delta = config.delta if config.delta is not None else 2 * grid.spacing
            scan = _scan(pair, N, grid, scale, epsilon, delta)
            if scan.outcome != "end" or doublings == config.max_grid_doublings:
                break
            grid = grid.expanded()
            doublings += 1
            logger.debug("N=%d: no decision within the grid, widening to %r", N, grid)
        if scan.outcome == "accept":
            R = scan.index
            return PowerSelection(
                N=N,
                gamma=float(grid.values[grid.zero_index + R]),
                R=R,
                grid=grid,
                epsilon=epsilon,
                delta=delta,
                pair=pair,
                constants=constants,
                q0=q0,
                doublings=doublings,
            )
        logger.debug("N=%d rejected: %s at offset %d", N, scan.outcome, scan.index)

    R = _fallback_offset(scan)
    gamma = float(grid.values[grid.zero_index + R])
    warnings.warn(
        f"No power up to N={N} brings |φ̂|^N below ε={epsilon:g}; "
        f"using N={N} with γ={gamma:g}",
        DataQualityWarning,
        stacklevel=2,
    )
    return PowerSelection(
        N=N,
        gamma=gamma,
        R=R,
        grid=grid,
        epsilon=epsilon,
        delta=delta,
        pair=pair,
        constants=constants,
        q0=q0,
        hit_n_max=True,
        doublings=doublings,
    )


def select_power(
    x: npt.ArrayLike, z: npt.ArrayLike, config: NpfdConfig | None = None
) -> PowerSelection:
    """Choose the power N and window [-γ, γ] for deconvolving `x` out of `z`.

    Raises
    ------
    VarianceOrderError
        If Var(z) <= Var(x).
    """
    config = config or NpfdConfig()
    x_arr = as_sample(x, name="x")
    z_arr = as_sample(z, name="z")
    check_variance_order(x_arr, z_arr)
    return search_power(
        two_sample_factory(x_arr, z_arr, config),
        config,
        config.resolve_epsilon(x_arr.size, z_arr.size),
    )


def two_sample_factory(x: np.ndarray, z: np.ndarray, config: NpfdConfig) -> PairFactory:
    def factory(N: int) -> tuple[FourierPair, TransformConstants]:
        x_tilde, z_tilde, constants = transform_inputs(x, z, N)
        return estimate_ft_pair(x_tilde, z_tilde, config), constants

    return factory
