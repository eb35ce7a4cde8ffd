from __future__ import annotations

from json import dumps, loads
import logging
import math
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy import integrate, special

from .._typing import FloatArray, Self
from .._util import as_sample
from ._histogram import (
    Histogram,
    InsufficientDataError,
    build_histogram,
    select_bin_count,
)
from ._knots import place_knots
from ._spline import NaturalSplineBasis

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 50
TOLERANCE = 1e-8
_MAX_ETA = 700.0


class FitFailureError(RuntimeError):
    """The Poisson regression did not converge.

    The deviance of every iteration is kept in `trace`.
    """

    def __init__(self, message: str, trace: list[float]) -> None:
        super().__init__(f"{message} (deviance trace: {trace})")
        self.trace = trace


class DensityFit:
    """A density estimate from Poisson regression on histogram counts.

    The fitted counts are ĉ(x) = exp(S(x)ᵀβ) for the natural spline basis S,
    and the density is ĉ(x) / (Δ·Σc) on the range of the sample and 0
    outside of it.
    """

    def __init__(
        self,
        knots: npt.ArrayLike,
        coefficients: npt.ArrayLike,
        support: tuple[float, float],
        normalizer: float,
        *,
        deviance: float = float("nan"),
        iterations: int = 0,
    ) -> None:
        self._knots = np.asarray(knots, dtype=np.float64)
        self._coefficients = np.asarray(coefficients, dtype=np.float64)
        lo, hi = float(support[0]), float(support[1])
        self._basis = NaturalSplineBasis(self._knots, lo, hi)
        if self._coefficients.shape != (self._basis.n_functions,):
            raise ValueError(
                f"Expected {self._basis.n_functions} coefficients, "
                f"got {self._coefficients.size}"
            )
        if not normalizer > 0:
            raise ValueError(f"normalizer must be positive, got {normalizer}")
        self._support = (lo, hi)
        self._normalizer = float(normalizer)
        self._deviance = float(deviance)
        self._iterations = int(iterations)

    @property
    def knots(self) -> FloatArray:
        return self._knots

    @property
    def coefficients(self) -> FloatArray:
        """β̂, one per basis function."""
        return self._coefficients

    @property
    def support(self) -> tuple[float, float]:
        """The range [min(x), max(x)] of the sample that was fit."""
        return self._support

    @property
    def normalizer(self) -> float:
        """Δ·Σc, the histogram area."""
        return self._normalizer

    @property
    def df(self) -> int:
        """Degrees of freedom, the number of knots plus one."""
        return int(self._knots.size + 1)

    @property
    def deviance(self) -> float:
        return self._deviance

    @property
    def iterations(self) -> int:
        return self._iterations

    def __call__(self, x: npt.ArrayLike) -> FloatArray:
        return eval_density(self, x)

    def integral(self, n_points: int = 1001) -> float:
        """Trapezoid-rule integral of the density over its support."""
        grid = np.linspace(*self._support, n_points)
        return float(integrate.trapezoid(self(grid), grid))

    def to_json(self, path: str | Path | None = None) -> dict:
        """Return a JSON-serializable dict, also writing it to `path` if given."""
        d = {
            "knots": self._knots.tolist(),
            "coefficients": self._coefficients.tolist(),
            "support": list(self._support),
            "normalizer": self._normalizer,
            "deviance": self._deviance,
            "iterations": self._iterations,
        }
        if path is not None:
            Path(path).write_text(dumps(d))
        return d

    @classmethod
    def from_json(cls, json: dict | str | Path) -> Self:
        """Load from a dict as made by `to_json`, or from a path to a JSON file."""
        if not isinstance(json, dict):
            json = loads(Path(json).read_text())
        return cls(
            json["knots"],
            json["coefficients"],
            tuple(json["support"]),
            json["normalizer"],
            deviance=json.get("deviance", float("nan")),
            iterations=json.get("iterations", 0),
        )

    def __repr__(self) -> str:
        lo, hi = self._support
        return f"DensityFit(df={self.df}, support=[{lo:g}, {hi:g}])"


def _deviance(y: np.ndarray, mu: np.ndarray) -> float:
    return float(2 * np.sum(special.xlogy(y, y / mu) - (y - mu)))


def fit_poisson_spline(hist: Histogram, knots: npt.ArrayLike) -> DensityFit:
    """Fit log E[c_i] = S(m_i)ᵀβ by iteratively reweighted least squares.

    Zero-count intervals take part in the fit. Iteration stops once the
    relative change in deviance is below 1e-8, or after 50 iterations.

    Raises
    ------
    FitFailureError
        If the iteration produces non-finite values or is still diverging
        after 50 iterations.
    """
    lo, hi = float(hist.boundaries[0]), float(hist.boundaries[-1])
    basis = NaturalSplineBasis(knots, lo, hi)
    X = basis(hist.midpoints)
    y = hist.counts.astype(np.float64)
    if X.shape[0] < X.shape[1]:
        raise InsufficientDataError(
            f"{hist.n_bins} intervals cannot support {X.shape[1]} basis functions"
        )

    mu = y + 0.1
    eta = np.log(mu)
    trace = [_deviance(y, mu)]
    beta = np.zeros(X.shape[1])
    converged = False
    with np.errstate(over="raise", invalid="raise", divide="raise"):
        for iteration in range(1, MAX_ITERATIONS + 1):
            z = eta + (y - mu) / mu
            w = np.sqrt(mu)
            try:
                beta = np.linalg.lstsq(X * w[:, None], z * w, rcond=None)[0]
                eta = X @ beta
                if not np.all(np.isfinite(eta)) or eta.max() > _MAX_ETA:
                    raise FloatingPointError("linear predictor overflow")
                mu = np.exp(eta)
                dev = _deviance(y, mu)
            except (FloatingPointError, np.linalg.LinAlgError) as e:
                raise FitFailureError(
                    f"IRLS failed at iteration {iteration}: {e}", trace
                ) from e
            if not math.isfinite(dev):
                raise FitFailureError("Deviance is not finite", trace)
            logger.debug("IRLS iteration %d: deviance %.10g", iteration, dev)
            trace.append(dev)
            if abs(dev - trace[-2]) / (abs(dev) + 0.1) < TOLERANCE:
                converged = True
                break
    if not converged:
        if trace[-1] > trace[-2]:
            raise FitFailureError(
                f"No convergence in {MAX_ITERATIONS} iterations, deviance increasing",
                trace,
            )
        logger.warning(
            "IRLS stopped after %d iterations without reaching tolerance",
            MAX_ITERATIONS,
        )
    return DensityFit(
        basis.knots,
        beta,
        (lo, hi),
        hist.width * hist.total,
        deviance=trace[-1],
        iterations=len(trace) - 1,
    )


def eval_density(fit: DensityFit, x: npt.ArrayLike) -> FloatArray:
    """Evaluate the fitted density at `x`: 0 outside the support."""
    x_arr = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(x_arr).ravel()
    lo, hi = fit.support
    out = np.zeros(flat.shape)
    inside = (flat >= lo) & (flat <= hi)
    if np.any(inside):
        eta = fit._basis(flat[inside]) @ fit.coefficients
        with np.errstate(over="ignore"):
            out[inside] = np.exp(eta) / fit.normalizer
    return out.reshape(x_arr.shape)


def fit_density(
    sample: npt.ArrayLike,
    df: int = 5,
    anchor: Literal["mode", "median"] = "mode",
    n_bins: int | None = None,
) -> DensityFit:
    """Estimate a density from a sample in one call.

    Chooses the number of intervals (unless `n_bins` is given), builds the
    histogram, places df - 1 knots and fits the Poisson spline. The number
    of intervals is raised to df + 1 if needed so the fit is identifiable.

    Examples
    --------
    >>> import numpy as np
    >>> x = np.random.default_rng(0).normal(size=500)
    >>> fit = fit_density(x)
    >>> fit.df
    5
    >>> float(fit(100.0))
    0.0
    """
    if df < 3:
        raise ValueError(f"df must be >= 3, got {df}")
    x = as_sample(sample)
    if n_bins is None:
        n_bins = select_bin_count(x)
    n_bins = max(n_bins, df + 1)
    hist = build_histogram(x, n_bins)
    knots = place_knots(hist, df - 1, anchor)
    fit = fit_poisson_spline(hist, knots)
    logger.debug("Fit %r on %d intervals in %d iterations", fit, n_bins, fit.iterations)
    return fit
