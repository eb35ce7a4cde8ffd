from __future__ import annotations

import dataclasses
from json import dumps, loads
import math
from pathlib import Path
from typing import Any, Sequence

import numpy as np
import numpy.typing as npt
import pandas as pd

from .._typing import FloatArray, Self
from ._run import ReplicateOutcome
from ._scenario import ScenarioSpec

OUTLIER_FACTOR = 1.5


def median_of_halves(values: npt.ArrayLike) -> tuple[float, float, float]:
    """(Q1, median, Q3) of the finite entries of `values`.

    Q1 and Q3 are the medians of the lower and upper halves of the sorted
    values, the middle value excluded when the count is odd. A single value
    is its own median and quartiles. All NaN if nothing is finite.
    """
    v = np.sort(np.asarray(values, dtype=np.float64))
    v = v[np.isfinite(v)]
    n = v.size
    if n == 0:
        return math.nan, math.nan, math.nan
    if n == 1:
        only = float(v[0])
        return only, only, only
    return (
        float(np.median(v[: n // 2])),
        float(np.median(v)),
        float(np.median(v[(n + 1) // 2 :])),
    )


def _nullable(values: FloatArray) -> list[float | None]:
    return [None if math.isnan(v) else float(v) for v in values]


@dataclasses.dataclass(frozen=True, eq=False)
class SummaryTable:
    """The 10×ISE values of every method over the replicates of one scenario.

    Failed fits are NaN in `values`. They count in `failures` and are left
    out of the quartiles.

    Attributes
    ----------
    values
        Per method, one 10×ISE value per replicate.
    N
        The power NPFD chose in each replicate, None where it failed.
    attempts
        How many draws each replicate needed to satisfy the variance order.
    representative_index
        The replicate whose NPFD 10×ISE comes closest to the NPFD median.
    representative
        That replicate's outcome, with its density curves. Not serialized.
    """

    scenario_id: str
    methods: tuple[str, ...]
    values: dict[str, FloatArray]
    N: tuple[int | None, ...]
    attempts: tuple[int, ...]
    representative_index: int | None
    n_warnings: int = 0
    representative: ReplicateOutcome | None = None

    @classmethod
    def from_outcomes(
        cls, spec: ScenarioSpec, outcomes: Sequence[ReplicateOutcome]
    ) -> Self:
        outcomes = sorted(outcomes, key=lambda o: o.index)
        values = {
            m: np.array([o.ise10[m] for o in outcomes], dtype=np.float64)
            for m in spec.methods
        }
        index = _closest_to_median(values["npfd"])
        return cls(
            scenario_id=spec.id,
            methods=tuple(spec.methods),
            values=values,
            N=tuple(o.N for o in outcomes),
            attempts=tuple(o.attempts for o in outcomes),
            representative_index=index,
            n_warnings=sum(o.n_warnings for o in outcomes),
            representative=None if index is None else outcomes[index],
        )

    @property
    def replicates(self) -> int:
        return len(self.attempts)

    @property
    def regenerations(self) -> int:
        """Data sets thrown away for violating the variance order."""
        return sum(self.attempts) - len(self.attempts)

    def quartiles(self, method: str) -> tuple[float, float, float]:
        """(Q1, median, Q3) of the method's 10×ISE values."""
        return median_of_halves(self.values[method])

    def median(self, method: str) -> float:
        return self.quartiles(method)[1]

    def failures(self, method: str) -> int:
        return int(np.count_nonzero(np.isnan(self.values[method])))

    def inliers(self, method: str) -> FloatArray:
        """The finite values within 1.5 IQR of the quartiles, as drawn in box plots."""
        v = self.values[method]
        v = v[np.isfinite(v)]
        q1, _, q3 = median_of_halves(v)
        spread = OUTLIER_FACTOR * (q3 - q1)
        return v[(v >= q1 - spread) & (v <= q3 + spread)]

    def box_stats(self, method: str) -> dict[str, float]:
        """Whiskers, quartiles and the outlier count for a box plot."""
        q1, med, q3 = self.quartiles(method)
        inliers = self.inliers(method)
        finite = int(np.count_nonzero(np.isfinite(self.values[method])))
        return {
            "lower": float(inliers.min()) if inliers.size else math.nan,
            "q1": q1,
            "median": med,
            "q3": q3,
            "upper": float(inliers.max()) if inliers.size else math.nan,
            "outliers": finite - inliers.size,
        }

    def to_frame(self) -> pd.DataFrame:
        """One row per method: median, q1, q3 and the failure count."""
        rows = []
        for m in self.methods:
            q1, med, q3 = self.quartiles(m)
            rows.append(
                {
                    "scenario": self.scenario_id,
                    "method": m,
                    "median": med,
                    "q1": q1,
                    "q3": q3,
                    "failures": self.failures(m),
                    "replicates": self.replicates,
                }
            )
        return pd.DataFrame(rows)

    def to_csv(self, path: str | Path) -> None:
        self.to_frame().to_csv(path, index=False)

    def replicates_frame(self) -> pd.DataFrame:
        """One row per replicate with N, attempts and 10×ISE by method."""
        frame = pd.DataFrame(
            {
                "replicate": np.arange(self.replicates),
                "N": pd.array(self.N, dtype="Int64"),
                "attempts": self.attempts,
            }
        )
        for m in self.methods:
            frame[m] = self.values[m]
        return frame

    def headline(self) -> str:
        """e.g. "npfd 0.0312 [0.0204, 0.0415], fdd 0.0703 [0.0511, 0.0902]"."""
        parts = []
        for m in self.methods:
            q1, med, q3 = self.quartiles(m)
            parts.append(f"{m} {med:.3g} [{q1:.3g}, {q3:.3g}]")
        return ", ".join(parts)

    def to_json(self, path: str | Path | None = None) -> dict[str, Any]:
        """Return a JSON-serializable dict, also writing it to `path` if given.

        The raw values are kept alongside the summary; failures are null.
        """
        d = {
            "scenario": self.scenario_id,
            "methods": list(self.methods),
            "replicates": self.replicates,
            "regenerations": self.regenerations,
            "warnings": self.n_warnings,
            "representative_index": self.representative_index,
            "summary": {m: self._summary_entry(m) for m in self.methods},
            "values": {m: _nullable(self.values[m]) for m in self.methods},
            "N": list(self.N),
            "attempts": list(self.attempts),
        }
        if path is not None:
            Path(path).write_text(dumps(d, indent=2))
        return d

    def _summary_entry(self, method: str) -> dict[str, Any]:
        stats: dict[str, Any] = {
            **self.box_stats(method),
            "failures": self.failures(method),
        }
        return {
            k: None if isinstance(v, float) and math.isnan(v) else v
            for k, v in stats.items()
        }

    @classmethod
    def from_json(cls, json: dict | str | Path) -> Self:
        """Load from a dict as made by `to_json`, or from a path to a JSON file."""
        if not isinstance(json, dict):
            json = loads(Path(json).read_text())
        return cls(
            scenario_id=json["scenario"],
            methods=tuple(json["methods"]),
            values={
                m: np.asarray(v, dtype=np.float64) for m, v in json["values"].items()
            },
            N=tuple(json["N"]),
            attempts=tuple(json["attempts"]),
            representative_index=json["representative_index"],
            n_warnings=json.get("warnings", 0),
        )

    def __repr__(self) -> str:
        return (
            f"SummaryTable({self.scenario_id!r}, "
            f"replicates={self.replicates}: {self.headline()})"
        )


def _closest_to_median(values: FloatArray) -> int | None:
    _, med, _ = median_of_halves(values)
    if math.isnan(med):
        return None
    distance = np.where(np.isfinite(values), np.abs(values - med), np.inf)
    return int(np.argmin(distance))
