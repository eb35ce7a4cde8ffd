from __future__ import annotations

import dataclasses
import logging
import math
import warnings
from typing import Literal

import numpy as np
import numpy.typing as npt
from sklearn.linear_model import LinearRegression

from .._util import as_sample
from ..fourier import FourierEstimate, TGrid, evaluate_empirical, mc_inverse
from ..npfd import DataQualityWarning
from ._kernels import bartlett_damping, safe_quotient
from ._result import BaselineResult

logger = logging.getLogger(__name__)

DampingRule = Literal["crossing", "slope"]
DAMPING_RULES = ("crossing", "slope")

# the decay fits scan t = 50/2000, 2·50/2000, ..., 50
SCAN_POINTS = 2000
SCAN_T_MAX = 50.0
# a fit region starts where the modulus first drops to this level
UPPER_LEVEL = 0.5
INVERSION_POINTS = 401


class DampingFitError(ValueError):
    """No region of |φ̂| to fit a decay line on."""


@dataclasses.dataclass(frozen=True)
class DecayFit:
    """The least-squares line log|φ̂(t)| ≈ intercept + slope·log t.

    Fitted on [t_lo, t_hi], from where |φ̂| first drops to 0.5 to the last
    point above the noise level `floor` = n^{-1/2} of the empirical transform.
    """

    slope: float
    intercept: float
    t_lo: float
    t_hi: float
    n_points: int
    floor: float

    @property
    def p(self) -> float:
        """The magnitude of the fitted slope."""
        return -self.slope

    def crossing(self) -> float:
        """Where the fitted line meets the noise level."""
        return math.exp((math.log(self.floor) - self.intercept) / self.slope)


@dataclasses.dataclass(frozen=True)
class DampingFit:
    """The damping width M̂ and the decay fits it came from."""

    M: float
    rule: DampingRule
    x_fit: DecayFit | None
    z_fit: DecayFit | None

    @property
    def t_x(self) -> float:
        """The last t with |φ̂_X| at or above its noise level."""
        return self.x_fit.t_hi if self.x_fit else math.inf

    @property
    def t_z(self) -> float:
        """Where the line fitted to log|φ̂_Z| meets its noise level."""
        return self.z_fit.crossing() if self.z_fit else math.inf


def _scan_t() -> np.ndarray:
    return np.arange(1, SCAN_POINTS + 1) * (SCAN_T_MAX / SCAN_POINTS)


def fit_decay(sample: npt.ArrayLike, *, name: str = "sample") -> DecayFit:
    """Fit log|φ̂(t)| against log t where the decay is roughly linear.

    Raises
    ------
    DampingFitError
        If the region holds fewer than two points or the fitted line does
        not fall.
    """
    arr = as_sample(sample, name=name)
    t = _scan_t()
    modulus = np.abs(evaluate_empirical(arr, t))
    floor = arr.size**-0.5
    start = np.flatnonzero(modulus <= UPPER_LEVEL)
    if start.size == 0:
        raise DampingFitError(
            f"|φ̂| of {name} stays above {UPPER_LEVEL} for all t <= {SCAN_T_MAX}"
        )
    lo = int(start[0])
    below = np.flatnonzero(modulus[lo:] < floor)
    hi = lo + int(below[0]) if below.size else t.size
    if hi - lo < 2:
        raise DampingFitError(
            f"Only {hi - lo} point(s) of |φ̂| of {name} between {floor:.3g} "
            f"and {UPPER_LEVEL}"
        )
    model = LinearRegression().fit(
        np.log(t[lo:hi]).reshape(-1, 1), np.log(modulus[lo:hi])
    )
    slope = float(model.coef_[0])
    if not slope < 0:
        raise DampingFitError(f"|φ̂| of {name} does not decay (slope {slope:.3g})")
    return DecayFit(
        slope=slope,
        intercept=float(model.intercept_),
        t_lo=float(t[lo]),
        t_hi=float(t[hi - 1]),
        n_points=hi - lo,
        floor=floor,
    )


def estimate_damping(
    x: npt.ArrayLike,
    z: npt.ArrayLike | None = None,
    *,
    rule: DampingRule = "crossing",
) -> DampingFit:
    """The width M̂ of the Bartlett damping from the decay of |φ̂_X| and |φ̂_Z|.

    With `rule="crossing"`, M̂ = 2·t_z, where t_z is where the line fitted to
    log|φ̂_Z| meets n_z^{-1/2}, so the damping weight is 1/2 where φ̂_Z sinks
    into its noise. M̂ is capped at t_x, the last t before |φ̂_X| drops below
    n_x^{-1/2} and the denominator turns to noise. An `x` whose transform
    does not decay sets no cap.

    With `rule="slope"`, M̂ = p̂/√2 with p̂ the magnitude of the slope
    fitted to log|φ̂_X|; `z` is not used.

    Raises
    ------
    DampingFitError
        If the needed fits fail.
    """
    if rule not in DAMPING_RULES:
        raise ValueError(f"rule must be one of {DAMPING_RULES}, got {rule!r}")
    if rule == "slope":
        x_fit = fit_decay(x, name="x")
        fit = DampingFit(x_fit.p / math.sqrt(2), rule, x_fit=x_fit, z_fit=None)
    else:
        if z is None:
            raise ValueError("The crossing rule needs the mixed sample z")
        z_fit = fit_decay(z, name="z")
        cap: DecayFit | None
        try:
            cap = fit_decay(x, name="x")
        except DampingFitError as exc:
            logger.debug("No cap from the convolving sample: %s", exc)
            cap = None
        t_x = cap.t_hi if cap else math.inf
        M = min(2 * z_fit.crossing(), t_x)
        fit = DampingFit(M=M, rule=rule, x_fit=cap, z_fit=z_fit)
    logger.debug("Damping fit: %r", fit)
    return fit


def fdd_deconvolve(
    x: npt.ArrayLike,
    z: npt.ArrayLike,
    ygrid: npt.ArrayLike,
    damping: float | None = None,
    rule: DampingRule = "crossing",
) -> BaselineResult:
    """Fourier deconvolution with Bartlett damping.

    f̂(y) = (1/2π)∫ d(t)·φ̂_Z(t)/φ̂_X(t)·e^{-ity} dt with d(t) = max(0, 1 - |t|/M)
    and empirical transforms of both samples.

    Parameters
    ----------
    x, z
        Samples of the convolving and the mixed distribution.
    ygrid
        Where to evaluate the density.
    damping
        The damping width M; estimated with `estimate_damping` if None.
    rule
        How `estimate_damping` picks M.

    Raises
    ------
    DampingFitError
        If `damping` is None and the width cannot be fitted.
    """
    x_arr = as_sample(x, name="x")
    z_arr = as_sample(z, name="z")
    y = np.asarray(ygrid, dtype=np.float64)
    diagnostics: dict = {}
    if damping is None:
        fit = estimate_damping(x_arr, z_arr, rule=rule)
        M = fit.M
        diagnostics.update(rule=rule)
        if fit.x_fit is not None:
            diagnostics.update(p=fit.x_fit.p, t_x=fit.t_x)
        if fit.z_fit is not None:
            diagnostics.update(t_z=fit.t_z)
    else:
        M = float(damping)
    spacing = SCAN_T_MAX / SCAN_POINTS
    degenerate = M < spacing
    if degenerate:
        warnings.warn(
            f"Damping width {M:.3g} is below the scan spacing {spacing:g}; "
            "the estimate is nearly flat",
            DataQualityWarning,
            stacklevel=2,
        )
    grid = TGrid(INVERSION_POINTS, M)
    t = grid.values
    q, n_bad = safe_quotient(evaluate_empirical(z_arr, t), evaluate_empirical(x_arr, t))
    estimate = FourierEstimate(grid, bartlett_damping(t, M) * q)
    inversion = mc_inverse(estimate, y, normalization="padded")
    logger.info("FDD with damping width M=%g", M)
    diagnostics.update(
        damping=M,
        degenerate=degenerate,
        non_finite=n_bad,
        max_imag_residual=inversion.max_imag_residual,
    )
    return BaselineResult("fdd", y, inversion.density, diagnostics)
