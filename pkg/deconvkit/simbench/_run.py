from __future__ import annotations

import dataclasses
import logging
import math
from typing import TYPE_CHECKING, Any
import warnings

from joblib import Parallel, delayed
import numpy as np
import pandas as pd

from .._typing import DensityCurve, FloatArray
from ..baselines import BaselineConfig, DampingFitError, run_baseline
from ..density import DegenerateKnotsError, FitFailureError, InsufficientDataError
from ..fourier import WindowError
from ..npfd import (
    DataQualityWarning,
    NpfdResult,
    VarianceOrderError,
    check_variance_order,
    known_error_output_grid,
    npfd_deconvolve,
    npfd_known_error,
    npfd_output_grid,
    npfd_replicates,
    pooled_replicates,
    replicates_to_error_sample,
)
from ._ise import ise
from ._scenario import ScenarioSpec

if TYPE_CHECKING:
    from ._summary import SummaryTable

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 100

# a method hitting one of these scores NaN for the replicate instead of
# aborting the whole scenario
_METHOD_FAILURES = (
    FitFailureError,
    DampingFitError,
    InsufficientDataError,
    DegenerateKnotsError,
    VarianceOrderError,
    WindowError,
)


class ScenarioInfeasibleError(RuntimeError):
    """A replicate kept violating the variance order, MAX_ATTEMPTS times in a row."""


def replicate_rng(
    spec: ScenarioSpec, index: int, attempt: int = 0
) -> np.random.Generator:
    """The random stream of one attempt at one replicate.

    It depends only on (base_seed, index, attempt), so serial and parallel
    runs draw the same data.
    """
    seq = np.random.SeedSequence(spec.base_seed, spawn_key=(index, attempt))
    return np.random.default_rng(seq)


def draw_samples(spec: ScenarioSpec, rng: np.random.Generator) -> dict[str, FloatArray]:
    """Draw one data set.

    Returns {"x", "z"} in two-sample and known-error mode (x holds the
    unobserved errors in the latter) and {"z1", "z2"} in replicates mode.
    """
    target, conv = spec.target, spec.convolving
    strat = spec.stratified_error
    if spec.mode == "two-sample":
        x = conv.sample(spec.n_x, rng)
        z = target.sample(spec.n_z, rng) + conv.sample(spec.n_z, rng)
        return {"x": x, "z": z}
    y = target.sample(spec.n, rng)
    if spec.mode == "known-error":
        x = conv.sample(spec.n, rng, stratified=strat)
        return {"x": x, "z": y + x}
    e1 = conv.sample(spec.n, rng, stratified=strat)
    e2 = conv.sample(spec.n, rng, stratified=strat)
    return {"z1": y + e1, "z2": y + e2}


def _check_order(spec: ScenarioSpec, samples: dict[str, FloatArray]) -> None:
    if spec.mode == "two-sample":
        check_variance_order(samples["x"], samples["z"])
    elif spec.mode == "known-error":
        check_variance_order(samples["x"], samples["z"])
        check_variance_order(spec.convolving.variance, samples["z"])
    else:
        z1, z2 = samples["z1"], samples["z2"]
        check_variance_order(
            replicates_to_error_sample(z1, z2), pooled_replicates(z1, z2)
        )


def _output_grid(spec: ScenarioSpec, samples: dict[str, FloatArray]) -> FloatArray:
    n_y = spec.npfd.n_y
    if spec.mode == "two-sample":
        return npfd_output_grid(samples["x"], samples["z"], n_y)
    if spec.mode == "known-error":
        return known_error_output_grid(samples["z"], spec.convolving, n_y)
    z1, z2 = samples["z1"], samples["z2"]
    return npfd_output_grid(
        replicates_to_error_sample(z1, z2), pooled_replicates(z1, z2), n_y
    )


def _run_npfd(spec: ScenarioSpec, samples: dict[str, FloatArray]) -> NpfdResult:
    if spec.mode == "two-sample":
        return npfd_deconvolve(samples["x"], samples["z"], spec.npfd)
    if spec.mode == "known-error":
        return npfd_known_error(samples["z"], spec.convolving, spec.npfd)
    return npfd_replicates(samples["z1"], samples["z2"], spec.npfd)


def _run_baseline(
    spec: ScenarioSpec, method: str, samples: dict[str, FloatArray], ygrid: FloatArray
) -> DensityCurve:
    error = spec.convolving if method == "dkm" else None
    config = BaselineConfig(method=method, error=error)  # type: ignore[arg-type]
    if spec.mode == "two-sample":
        return run_baseline(config, ygrid, x=samples["x"], z=samples["z"])
    if spec.mode == "known-error":
        return run_baseline(config, ygrid, z=samples["z"])
    return run_baseline(config, ygrid, z1=samples["z1"], z2=samples["z2"])


@dataclasses.dataclass(frozen=True, eq=False)
class ReplicateOutcome:
    """Everything one replicate of a scenario produced.

    `results` maps each method to its estimate, or to None if the method
    failed; `failures` then holds the reason and `ise10` is NaN.
    """

    index: int
    attempts: int
    samples: dict[str, FloatArray]
    ygrid: FloatArray
    results: dict[str, DensityCurve | None]
    ise10: dict[str, float]
    failures: dict[str, str]
    n_warnings: int = 0

    @property
    def N(self) -> int | None:
        """The power NPFD chose, or None if it failed."""
        result = self.results.get("npfd")
        return result.N if isinstance(result, NpfdResult) else None

    @property
    def regenerations(self) -> int:
        return self.attempts - 1

    def to_frame(self) -> pd.DataFrame:
        """Column y, then one density column per method (NaN if it failed)."""
        columns: dict[str, Any] = {"y": self.ygrid}
        for method, result in self.results.items():
            columns[method] = (
                np.full(self.ygrid.size, np.nan) if result is None else result.density
            )
        return pd.DataFrame(columns)

    def __repr__(self) -> str:
        scores = ", ".join(f"{m}={v:.3g}" for m, v in self.ise10.items())
        return f"ReplicateOutcome(index={self.index}, N={self.N}, {scores})"


def run_replicate(spec: ScenarioSpec, index: int) -> ReplicateOutcome:
    """Draw replicate `index` of `spec`, run every method and score it.

    A data set whose error sample has at least the variance of the mixed
    sample is thrown away and redrawn from the next attempt's stream.

    Raises
    ------
    ScenarioInfeasibleError
        If MAX_ATTEMPTS draws in a row violate the variance order.
    """
    for attempt in range(MAX_ATTEMPTS):
        samples = draw_samples(spec, replicate_rng(spec, index, attempt))
        try:
            _check_order(spec, samples)
        except VarianceOrderError:
            logger.debug("Scenario %s replicate %d: redrawing", spec.id, index)
            continue
        return _score(spec, index, attempt + 1, samples)
    raise ScenarioInfeasibleError(
        f"Scenario {spec.id!r}, replicate {index}: the variance order failed "
        f"in {MAX_ATTEMPTS} draws in a row"
    )


def _score(
    spec: ScenarioSpec, index: int, attempts: int, samples: dict[str, FloatArray]
) -> ReplicateOutcome:
    results: dict[str, DensityCurve | None] = {}
    failures: dict[str, str] = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DataQualityWarning)
        for method in spec.methods:
            try:
                if method == "npfd":
                    results[method] = _run_npfd(spec, samples)
                else:
                    results[method] = _run_baseline(
                        spec, method, samples, _shared_grid(spec, results, samples)
                    )
            except _METHOD_FAILURES as e:
                logger.warning(
                    "Scenario %s replicate %d: %s failed: %s", spec.id, index, method, e
                )
                results[method] = None
                failures[method] = f"{type(e).__name__}: {e}"
    n_warnings = 0
    for w in caught:
        if issubclass(w.category, DataQualityWarning):
            n_warnings += 1
        else:
            warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    ygrid = _shared_grid(spec, results, samples)
    ise10 = {
        m: math.nan if r is None else 10 * ise(r.density, r.ygrid, spec.target)
        for m, r in results.items()
    }
    return ReplicateOutcome(
        index=index,
        attempts=attempts,
        samples=samples,
        ygrid=ygrid,
        results=results,
        ise10=ise10,
        failures=failures,
        n_warnings=n_warnings,
    )


def _shared_grid(
    spec: ScenarioSpec,
    results: dict[str, DensityCurve | None],
    samples: dict[str, FloatArray],
) -> FloatArray:
    # the baselines and the ISE use the NPFD grid, or the same span if NPFD failed
    result = results.get("npfd")
    return _output_grid(spec, samples) if result is None else result.ygrid


def run_scenario(
    spec: ScenarioSpec, replicates: int | None = None, n_jobs: int | None = 1
) -> SummaryTable:
    """Run all replicates of a scenario and summarize the 10×ISE values.

    Parameters
    ----------
    spec
        The scenario.
    replicates
        Overrides `spec.replicates`.
    n_jobs
        Worker processes, as for joblib.Parallel; -1 uses every core. The
        result does not depend on it.

    Raises
    ------
    ScenarioInfeasibleError
        If some replicate cannot be drawn with Var(x) < Var(z).
    """
    from ._summary import SummaryTable

    spec = spec.with_overrides(replicates=replicates)
    logger.info(
        "Running scenario %s: %d replicates of %s",
        spec.id,
        spec.replicates,
        ", ".join(spec.methods),
    )
    outcomes = Parallel(n_jobs=n_jobs)(
        delayed(run_replicate)(spec, r) for r in range(spec.replicates)
    )
    summary = SummaryTable.from_outcomes(spec, outcomes)
    logger.info("Finished scenario %s: %s", spec.id, summary.headline())
    return summary
