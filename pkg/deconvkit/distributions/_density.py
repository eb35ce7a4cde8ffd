from __future__ import annotations

import functools
import logging
import math
from typing import TYPE_CHECKING, Callable
import warnings

import numpy as np
import numpy.typing as npt
from scipy import integrate, special, stats
from scipy.interpolate import CubicSpline

from .._typing import FloatArray
from ._family import Family

if TYPE_CHECKING:
    from ._spec import DistributionSpec

logger = logging.getLogger(__name__)

# below this |w| the k-fold density equals its value at 0 to double precision
_KFOLD_ZERO = 1e-8
_CONVOLUTION_POINTS = 2001


def pdf(spec: DistributionSpec, y: npt.ArrayLike) -> FloatArray:
    """Evaluate the density of `spec` at `y`.

    Closed forms come from scipy.stats and, for LaplaceKFold, from a Bessel
    function. Convolution numerically convolves its two components on a grid
    that is tabulated once per spec and interpolated.
    """
    y_arr = np.asarray(y, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = _pdf(spec, y_arr)
    return np.where(np.isnan(values), 0.0, np.maximum(values, 0.0))


def _pdf(spec: DistributionSpec, y: np.ndarray) -> np.ndarray:
    p = spec.params
    f = spec.family
    if f == Family.NORMAL:
        return stats.norm.pdf(y, p["loc"], p["scale"])
    if f == Family.LAPLACE:
        return stats.laplace.pdf(y, p["loc"], p["scale"])
    if f == Family.EXPONENTIAL:
        return stats.expon.pdf(y, scale=1 / p["rate"])
    if f == Family.GAMMA:
        return stats.gamma.pdf(y, p["shape"], scale=1 / p["rate"])
    if f == Family.WEIBULL:
        return stats.weibull_min.pdf(y, p["shape"], scale=p["scale"])
    if f == Family.GUMBEL:
        return stats.gumbel_r.pdf(y, p["loc"], p["scale"])
    if f == Family.CHI_SQUARE:
        return stats.chi2.pdf(y, p["df"])
    if f == Family.SCALED_CHI_SQUARE:
        d = p["divisor"]
        return stats.chi2.pdf(y * d, p["df"]) * d
    if f == Family.LAPLACE_KFOLD:
        w = (y - p["loc"]) / p["scale"]
        return standard_laplace_kfold_pdf(p["k"], w) / p["scale"]
    if f == Family.MIXTURE:
        total = np.zeros(y.shape)
        for weight, component in zip(spec.weights, spec.components):
            total = total + weight * _pdf(component, y)
        return total
    table = _convolution_table(spec)
    return table(y)


def standard_laplace_kfold_pdf(k: int, w: npt.ArrayLike) -> FloatArray:
    """Density of the sum of `k` independent Laplace(0, 1) variables.

    The closed form (|w|/2)^ν·K_ν(|w|)/(√π·Γ(k)) with ν = k - ½ and K_ν the
    modified Bessel function of the second kind. It is evaluated in logs
    with the scaled `kve` so it neither overflows near 0 nor underflows in
    the tails.
    """
    w_arr = np.abs(np.asarray(w, dtype=np.float64))
    nu = k - 0.5
    at_zero = math.gamma(nu) / (2 * math.sqrt(math.pi) * math.gamma(k))
    out = np.full(w_arr.shape, at_zero)
    away = ~(w_arr <= _KFOLD_ZERO)
    x = w_arr[away]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_f = (
            nu * np.log(x / 2)
            + np.log(special.kve(nu, x))
            - x
            - math.lgamma(k)
            - 0.5 * math.log(math.pi)
        )
    out[away] = np.where(np.isinf(x), 0.0, np.exp(log_f))
    return out


def effective_support(
    spec: DistributionSpec, n_sd: float = 15.0
) -> tuple[float, float]:
    """The support, with infinite ends cut at `n_sd` standard deviations."""
    lo, hi = spec.support
    mu, sd = spec.mean, spec.std
    if not math.isfinite(lo):
        lo = mu - n_sd * sd
    if not math.isfinite(hi):
        hi = mu + n_sd * sd
    return lo, hi


def _convolve_at(
    a: DistributionSpec,
    b: DistributionSpec,
    y: float,
    fa: Callable[[float], float],
    fb: Callable[[float], float],
) -> float:
    alo, ahi = effective_support(a)
    blo, bhi = effective_support(b)
    lo = max(blo, y - ahi)
    hi = min(bhi, y - alo)
    if not hi > lo:
        return 0.0

    def integrand(s: float) -> float:
        return fa(y - s) * fb(s)

    with warnings.catch_warnings(), np.errstate(divide="ignore", invalid="ignore"):
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, _ = integrate.quad(integrand, lo, hi, limit=200, epsabs=1e-13)
    return max(value, 0.0)


@functools.lru_cache(maxsize=None)
def _convolution_table(spec: DistributionSpec) -> Callable[[np.ndarray], np.ndarray]:
    a, b = spec.components
    lo, hi = effective_support(spec, n_sd=12.0)
    grid = np.linspace(lo, hi, _CONVOLUTION_POINTS)
    fa, fb = scalar_pdf(a), scalar_pdf(b)
    values = np.array([_convolve_at(a, b, float(y), fa, fb) for y in grid])
    logger.debug("Tabulated %r on %d points", spec, grid.size)
    spline = CubicSpline(grid, values)

    def evaluate(y: np.ndarray) -> np.ndarray:
        out = np.zeros(y.shape)
        inside = (y >= lo) & (y <= hi)
        out[inside] = spline(y[inside])
        return out

    return evaluate


def scalar_pdf(spec: DistributionSpec) -> Callable[[float], float]:
    """A fast pure-python density for scalar quadrature loops."""
    p = spec.params
    f = spec.family
    if f == Family.NORMAL:
        mu, sd = p["loc"], p["scale"]
        c = 1 / (sd * math.sqrt(2 * math.pi))
        return lambda x: c * math.exp(-0.5 * ((x - mu) / sd) ** 2)
    if f == Family.LAPLACE:
        mu, b = p["loc"], p["scale"]
        return lambda x: math.exp(-abs(x - mu) / b) / (2 * b)
    if f in (
        Family.EXPONENTIAL,
        Family.GAMMA,
        Family.CHI_SQUARE,
        Family.SCALED_CHI_SQUARE,
    ):
        shape, rate = _gamma_parameters(spec)
        log_c = shape * math.log(rate) - math.lgamma(shape)

        def gamma_pdf(x: float) -> float:
            if x <= 0:
                return 0.0
            return math.exp(log_c + (shape - 1) * math.log(x) - rate * x)

        return gamma_pdf
    if f == Family.GUMBEL:
        mu, beta = p["loc"], p["scale"]

        def gumbel_pdf(x: float) -> float:
            z = (x - mu) / beta
            if z < -700:
                return 0.0
            return math.exp(-(z + math.exp(-z))) / beta

        return gumbel_pdf
    if f == Family.WEIBULL:
        k, lam = p["shape"], p["scale"]

        def weibull_pdf(x: float) -> float:
            if x <= 0:
                return 0.0
            r = x / lam
            return (k / lam) * r ** (k - 1) * math.exp(-(r**k))

        return weibull_pdf
    return lambda x: float(pdf(spec, x))


def _gamma_parameters(spec: DistributionSpec) -> tuple[float, float]:
    """(shape, rate) of the gamma law behind the exponential and chi-square kinds."""
    p = spec.params
    f = spec.family
    if f == Family.EXPONENTIAL:
        return 1.0, p["rate"]
    if f == Family.GAMMA:
        return p["shape"], p["rate"]
    if f == Family.CHI_SQUARE:
        return p["df"] / 2, 0.5
    return p["df"] / 2, p["divisor"] / 2
