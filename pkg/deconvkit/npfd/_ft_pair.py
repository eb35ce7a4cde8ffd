from __future__ import annotations

import logging
from typing import Callable, Literal

import numpy as np
import numpy.typing as npt

from .._typing import ComplexArray, FloatArray
from .._util import as_sample
from ..density import fit_density
from ..distributions import DistributionSpec
from ..fourier import evaluate_empirical, evaluate_mc
from ._config import NpfdConfig
from ._transform import TransformConstants

logger = logging.getLogger(__name__)

FtMethod = Literal["spline", "empirical", "known"]
Transform = Callable[[np.ndarray], ComplexArray]


class FourierPair:
    """Fourier transforms of the transformed convolving and mixed samples.

    Both can be evaluated at any t, which the power search needs for the
    margin point t + δ and for grids of different widths.
    """

    def __init__(self, x_ft: Transform, z_ft: Transform, method: FtMethod) -> None:
        self._x_ft = x_ft
        self._z_ft = z_ft
        self._method = method

    @property
    def method(self) -> FtMethod:
        """How φ̂_X̃ was obtained: "spline", "empirical" or "known"."""
        return self._method

    def x(self, t: npt.ArrayLike) -> ComplexArray:
        return self._x_ft(np.atleast_1d(np.asarray(t, dtype=np.float64)))

    def z(self, t: npt.ArrayLike) -> ComplexArray:
        return self._z_ft(np.atleast_1d(np.asarray(t, dtype=np.float64)))

    def quotient(self, t: npt.ArrayLike, scale: complex = 1.0) -> ComplexArray:
        """φ̂_Z̃(t) / (scale·φ̂_X̃(t)); infinite where the denominator vanishes."""
        numerator = self.z(t)
        denominator = self.x(t)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            q = numerator / (denominator * scale)
        return np.where(np.isfinite(q), q, np.inf + 0j)

    def powered_modulus(
        self, t: npt.ArrayLike, N: int, scale: complex = 1.0
    ) -> FloatArray:
        """|φ̂_Z̃(t) / (scale·φ̂_X̃(t))|^N; infinite where that is not finite."""
        with np.errstate(over="ignore"):
            return np.abs(self.quotient(t, scale)) ** N


def _spline_transform(
    sample: np.ndarray, df: int, interval: tuple[float, float], config: NpfdConfig
) -> Transform:
    fit = fit_density(sample, df=df, anchor=config.anchor)

    def transform(t: np.ndarray) -> ComplexArray:
        return evaluate_mc(fit, interval, t, config.n_points)

    return transform


def _empirical_transform(sample: np.ndarray) -> Transform:
    def transform(t: np.ndarray) -> ComplexArray:
        return evaluate_empirical(sample, t)

    return transform


def estimate_ft_pair(
    x_tilde: npt.ArrayLike, z_tilde: npt.ArrayLike, config: NpfdConfig | None = None
) -> FourierPair:
    """Estimate the Fourier transforms of the two transformed samples.

    Empirical transforms are used if `config.use_empirical_ft` is set or the
    smaller sample has at most `config.empirical_threshold` observations.
    Otherwise both densities are fitted with Poisson splines and transformed
    by Monte Carlo integration over the shared range of both samples.
    """
    config = config or NpfdConfig()
    x = as_sample(x_tilde, name="x")
    z = as_sample(z_tilde, name="z")
    if config.uses_empirical(x.size, z.size):
        return FourierPair(
            _empirical_transform(x), _empirical_transform(z), "empirical"
        )
    interval = (min(x.min(), z.min()), max(x.max(), z.max()))
    return FourierPair(
        _spline_transform(x, config.x_df, interval, config),
        _spline_transform(z, config.df, interval, config),
        "spline",
    )


def known_error_pair(
    z_tilde: npt.ArrayLike,
    error: DistributionSpec,
    constants: TransformConstants,
    config: NpfdConfig | None = None,
) -> FourierPair:
    """The pair for a known error law: φ_X̃(t) = e^{i b_x t}·φ_X(a t) exactly."""
    config = config or NpfdConfig()
    z = as_sample(z_tilde, name="z")
    a, b_x = constants.a, constants.b_x

    def x_ft(t: np.ndarray) -> ComplexArray:
        return np.exp(1j * b_x * t) * error.cf(a * t)

    if config.uses_empirical(z.size, z.size):
        z_ft = _empirical_transform(z)
    else:
        z_ft = _spline_transform(z, config.df, (float(z.min()), float(z.max())), config)
    return FourierPair(x_ft, z_ft, "known")
