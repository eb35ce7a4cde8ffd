from __future__ import annotations

import dataclasses
from json import dumps, loads
from pathlib import Path
from typing import Any, Literal, Mapping

from .._typing import Self
from ..baselines import METHODS as BASELINE_METHODS
from ..distributions import DistributionSpec
from ..npfd import NpfdConfig

Mode = Literal["two-sample", "known-error", "replicates"]
MODES = ("two-sample", "known-error", "replicates")
MIN_SAMPLE_SIZE = 10

# which baselines can run on the data of each mode
_COMPATIBLE: dict[str, tuple[str, ...]] = {
    "two-sample": ("fdd", "mcd"),
    "known-error": ("dkm",),
    "replicates": ("rmd",),
}


class UnknownScenarioError(KeyError):
    """No built-in scenario has this id."""

    def __init__(self, scenario_id: str) -> None:
        self.scenario_id = scenario_id
        super().__init__(scenario_id)

    def __str__(self) -> str:
        return f"Unknown scenario {self.scenario_id!r}"


@dataclasses.dataclass(frozen=True)
class ScenarioSpec:
    """One simulation setting: the laws to draw from and the methods to compare.

    Parameters
    ----------
    id
        A unique name, e.g. "fdd-1".
    target
        The law of Y, whose density the methods estimate.
    convolving
        The law of X. In "known-error" mode the methods are told this law; in
        the other modes they only see samples.
    mode
        "two-sample": independent samples of X (size `n_x`) and of Z = X + Y
        (size `n_z`). "known-error": Z = X + Y for `n_z` units. "replicates":
        two measurements Y + X per unit for `n_z` units.
    methods
        "npfd" plus any baselines that fit the mode.
    npfd
        The NPFD configuration to use.
    stratified_error
        Draw X per unit from the components of a mixture in order, so unit i
        has its own error law.
    """

    id: str
    target: DistributionSpec
    convolving: DistributionSpec
    mode: Mode = "two-sample"
    n_x: int = 500
    n_z: int = 500
    methods: tuple[str, ...] = ("npfd",)
    npfd: NpfdConfig = dataclasses.field(default_factory=NpfdConfig)
    replicates: int = 100
    base_seed: int = 2024
    stratified_error: bool = False
    description: str = ""

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if min(self.n_x, self.n_z) < MIN_SAMPLE_SIZE:
            raise ValueError(
                f"Sample sizes must be >= {MIN_SAMPLE_SIZE}, "
                f"got n_x={self.n_x}, n_z={self.n_z}"
            )
        if self.mode != "two-sample" and self.n_x != self.n_z:
            raise ValueError(
                f"The {self.mode} mode pairs X and Z, so n_x must equal n_z"
            )
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        object.__setattr__(self, "methods", tuple(self.methods))
        if "npfd" not in self.methods:
            raise ValueError("Every scenario runs npfd")
        for method in self.methods:
            if method == "npfd":
                continue
            if method not in BASELINE_METHODS:
                raise ValueError(f"Unknown method {method!r}")
            if method not in _COMPATIBLE[self.mode]:
                raise ValueError(f"The {method} method cannot run in {self.mode} mode")
        if self.stratified_error and self.mode == "two-sample":
            raise ValueError("Stratified errors need paired units")

    @property
    def n(self) -> int:
        """The number of units in the paired modes."""
        return self.n_z

    def with_overrides(self, **overrides: Any) -> Self:
        """A copy with the given fields replaced; None values are ignored."""
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None}
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "description": self.description,
            "target": self.target.to_dict(),
            "convolving": self.convolving.to_dict(),
            "mode": self.mode,
            "n_x": self.n_x,
            "n_z": self.n_z,
            "methods": list(self.methods),
            "npfd": self.npfd.to_dict(),
            "replicates": self.replicates,
            "base_seed": self.base_seed,
            "stratified_error": self.stratified_error,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Self:
        d = dict(d)
        d["target"] = DistributionSpec.from_dict(d["target"])
        d["convolving"] = DistributionSpec.from_dict(d["convolving"])
        d["npfd"] = NpfdConfig.from_dict(d.get("npfd", {}))
        if "methods" in d:
            d["methods"] = tuple(d["methods"])
        return cls(**d)

    def to_json(self, path: str | Path | None = None) -> str:
        text = dumps(self.to_dict(), indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_json(cls, json: str | Path) -> Self:
        """Load from a JSON string, or from a path to a JSON file."""
        if isinstance(json, Path) or not json.lstrip().startswith("{"):
            json = Path(json).read_text()
        return cls.from_dict(loads(json))
