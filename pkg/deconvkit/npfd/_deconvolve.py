from __future__ import annotations

import logging
import warnings

import numpy as np
import numpy.typing as npt

from .._typing import FloatArray
from .._util import as_sample, equidistant_grid
from ..distributions import DistributionSpec, UnsupportedFamilyError, has_closed_form_cf
from ..fourier import FourierEstimate, TGrid, mc_inverse
from ._config import NpfdConfig
from ._ft_pair import FourierPair, known_error_pair
from ._power import PowerSelection, rescale_factor, search_power, two_sample_factory
from ._quality import DataQualityWarning, check_variance_order
from ._result import NpfdResult
from ._transform import TransformConstants, power_constants

logger = logging.getLogger(__name__)


def npfd_deconvolve(
    x: npt.ArrayLike, z: npt.ArrayLike, config: NpfdConfig | None = None
) -> NpfdResult:
    """Estimate the density of Y from samples of X and of Z = X + Y.

    The two samples do not need to be paired or of equal size.

    Parameters
    ----------
    x
        Draws from the convolving distribution, e.g. the measurement error.
    z
        Draws from the mixed distribution.
    config
        Tuning parameters; the defaults suit samples of a few hundred or more.

    Returns
    -------
    NpfdResult
        The density of Y on `config.n_y` points from min(z) - max(x) to
        max(z) - min(x), with the chosen N, γ and diagnostics.

    Raises
    ------
    VarianceOrderError
        If Var(z) <= Var(x).
    """
    config = config or NpfdConfig()
    x_arr = as_sample(x, name="x")
    z_arr = as_sample(z, name="z")
    check_variance_order(x_arr, z_arr)
    epsilon = config.resolve_epsilon(x_arr.size, z_arr.size)
    selection = search_power(two_sample_factory(x_arr, z_arr, config), config, epsilon)
    return _invert(selection, npfd_output_grid(x_arr, z_arr, config.n_y), config)


def npfd_known_error(
    z: npt.ArrayLike, error: DistributionSpec, config: NpfdConfig | None = None
) -> NpfdResult:
    """Estimate the density of Y from a sample of Z = X + Y, with X ~ `error`.

    The Fourier transform of the transformed error is computed exactly,
    and the shift b_x uses the analytic mean of `error`. The output grid
    replaces min(x) and max(x) by the error mean ∓ 4 standard deviations.

    Raises
    ------
    UnsupportedFamilyError
        If `error` has no closed-form characteristic function.
    VarianceOrderError
        If Var(z) does not exceed the variance of `error`.
    """
    config = config or NpfdConfig()
    if not has_closed_form_cf(error):
        raise UnsupportedFamilyError(error.family, "known-error deconvolution")
    z_arr = as_sample(z, name="z")
    check_variance_order(error.variance, z_arr)
    mean_x = error.mean
    mean_z = float(np.mean(z_arr))

    def factory(N: int) -> tuple[FourierPair, TransformConstants]:
        constants = power_constants(N, mean_x, mean_z)
        z_tilde = z_arr if N == 1 else constants.a * z_arr + constants.b_z
        return known_error_pair(z_tilde, error, constants, config), constants

    n = z_arr.size
    selection = search_power(factory, config, config.resolve_epsilon(n, n))
    return _invert(selection, known_error_output_grid(z_arr, error, config.n_y), config)


def _powered_quotient(
    pair: FourierPair, grid: TGrid, N: int, config: NpfdConfig
) -> tuple[FourierEstimate, int]:
    q = pair.quotient(grid.values)
    with np.errstate(invalid="ignore", over="ignore"):
        if config.rescale_at_zero:
            scale = rescale_factor(complex(q[grid.zero_index]), config)
            q = np.where(np.isfinite(q), q / scale, q)
        powered = q**N
    bad = ~np.isfinite(powered)
    n_bad = int(bad.sum())
    if n_bad:
        warnings.warn(
            f"{n_bad} non-finite values of the powered quotient set to 0",
            DataQualityWarning,
            stacklevel=3,
        )
        powered = np.where(bad, 0, powered)
    return FourierEstimate(grid, powered), n_bad


def _damping_is_monotone(window: FloatArray, N: int) -> bool:
    # |w|^{N+1} <= |w|^N, i.e. the window never leaves the unit disc
    with np.errstate(over="ignore", invalid="ignore"):
        return bool(np.all(window ** (N + 1) <= window**N * (1 + 1e-12)))


def _invert(
    selection: PowerSelection, ygrid: FloatArray, config: NpfdConfig
) -> NpfdResult:
    N, gamma, R = selection.N, selection.gamma, selection.R
    q0 = selection.q0
    if config.rescale_at_zero and abs(q0 - 1) >= config.rescale_tolerance:
        warnings.warn(
            f"|φ̂(0) - 1| = {abs(q0 - 1):.3g} before rescaling; "
            "the Fourier estimates may be unreliable",
            DataQualityWarning,
            stacklevel=3,
        )
    scale = rescale_factor(q0, config)
    window_grid = selection.grid.window(R)
    window = FourierEstimate(
        window_grid, selection.pair.quotient(window_grid.values, scale)
    )
    monotone = _damping_is_monotone(window.modulus(), N)
    if not monotone:
        warnings.warn(
            f"The quotient leaves the unit disc inside [-{gamma:g}, {gamma:g}], "
            f"so powering it by N={N} amplifies rather than damps",
            DataQualityWarning,
            stacklevel=3,
        )

    quotient, n_bad = _powered_quotient(
        selection.pair, TGrid(config.K, gamma), N, config
    )
    inversion = mc_inverse(quotient, ygrid, normalization=config.normalization)
    density = inversion.density
    if config.clip_negative:
        density = np.maximum(density, 0.0)
    logger.info(
        "NPFD chose N=%d, gamma=%g (R=%d) using %s Fourier transforms",
        N,
        gamma,
        R,
        selection.pair.method,
    )
    diagnostics = {
        "q0_re": q0.real,
        "q0_im": q0.imag,
        "max_imag_residual": inversion.max_imag_residual,
        "hit_n_max": selection.hit_n_max,
        "forced_power": config.power is not None,
        "damping_monotone": monotone,
        "grid_doublings": selection.doublings,
        "delta": selection.delta,
        "non_finite": n_bad,
        "rescaled": config.rescale_at_zero,
    }
    return NpfdResult(
        N=N,
        gamma=gamma,
        R=R,
        constants=selection.constants,
        ygrid=ygrid,
        density=density,
        diagnostics=diagnostics,
        window=window,
        quotient=quotient,
        ft_method=selection.pair.method,
        epsilon=selection.epsilon,
        grid_t_max=selection.grid.t_max,
    )


def npfd_output_grid(x: npt.ArrayLike, z: npt.ArrayLike, n_y: int = 512) -> FloatArray:
    """The y-grid from min(z) - max(x) to max(z) - min(x)."""
    x_arr = as_sample(x, name="x")
    z_arr = as_sample(z, name="z")
    return equidistant_grid(
        float(z_arr.min() - x_arr.max()), float(z_arr.max() - x_arr.min()), n_y
    )


def known_error_output_grid(
    z: npt.ArrayLike, error: DistributionSpec, n_y: int = 512
) -> FloatArray:
    """The y-grid when X is known: min(x) and max(x) become E[X] ∓ 4 sd."""
    z_arr = as_sample(z, name="z")
    spread = 4 * error.std
    return equidistant_grid(
        float(z_arr.min() - (error.mean + spread)),
        float(z_arr.max() - (error.mean - spread)),
        n_y,
    )
