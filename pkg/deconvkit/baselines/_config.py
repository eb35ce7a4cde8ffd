from __future__ import annotations

import dataclasses
import logging
from typing import Any, Literal, Mapping

import numpy.typing as npt

from .._typing import Self
from ..distributions import DistributionSpec
from ._dkm import dkm_deconvolve
from ._fdd import DAMPING_RULES, DampingRule, fdd_deconvolve
from ._kernels import KERNELS, Kernel
from ._mcd import mcd_deconvolve
from ._result import BaselineResult
from ._rmd import DEFAULT_RIDGE, rmd_deconvolve

logger = logging.getLogger(__name__)

Method = Literal["fdd", "mcd", "dkm", "rmd"]
METHODS = ("fdd", "mcd", "dkm", "rmd")


@dataclasses.dataclass(frozen=True)
class BaselineConfig:
    """Which comparison method to run, and its tuning parameters.

    Parameters
    ----------
    method
        "fdd", "mcd", "dkm" or "rmd".
    bandwidth
        h for the kernel methods; None picks each method's rule of thumb.
    kernel
        The smoothing kernel; None picks the method default.
    damping
        The FDD damping width M; None fits it from the samples.
    damping_rule
        How FDD fits M when `damping` is None.
    ridge
        ρ, added to the RMD denominator.
    error
        The known error law, required by DKM.
    """

    method: Method
    bandwidth: float | None = None
    kernel: Kernel | None = None
    damping: float | None = None
    damping_rule: DampingRule = "crossing"
    ridge: float = DEFAULT_RIDGE
    error: DistributionSpec | None = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")
        if self.kernel is not None and self.kernel not in KERNELS:
            raise ValueError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")
        if self.damping is not None and not self.damping > 0:
            raise ValueError(f"damping must be positive, got {self.damping}")
        if self.damping_rule not in DAMPING_RULES:
            raise ValueError(
                f"damping_rule must be one of {DAMPING_RULES}, "
                f"got {self.damping_rule!r}"
            )
        if self.ridge < 0:
            raise ValueError(f"ridge must be >= 0, got {self.ridge}")
        if self.method == "dkm" and self.error is None:
            raise ValueError("The dkm method needs the error distribution")

    def with_overrides(self, **overrides: Any) -> Self:
        """A copy with the given fields replaced; None values are ignored."""
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None}
        )

    def to_dict(self) -> dict[str, Any]:
        d = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        d["error"] = None if self.error is None else self.error.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Self:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"Unknown BaselineConfig fields: {sorted(unknown)}")
        d = dict(d)
        if d.get("error") is not None:
            d["error"] = DistributionSpec.from_dict(d["error"])
        return cls(**d)


def run_baseline(
    config: BaselineConfig,
    ygrid: npt.ArrayLike,
    *,
    x: npt.ArrayLike | None = None,
    z: npt.ArrayLike | None = None,
    z1: npt.ArrayLike | None = None,
    z2: npt.ArrayLike | None = None,
) -> BaselineResult:
    """Run the method named by `config` on whichever data it needs.

    FDD and MCD take `x` and `z`, DKM takes `z` and `config.error`, and RMD
    takes the replicate columns `z1` and `z2`.
    """
    method = config.method
    logger.debug("Running baseline %r", config)
    if method in ("fdd", "mcd"):
        if x is None or z is None:
            raise ValueError(f"The {method} method needs both x and z")
        if method == "fdd":
            return fdd_deconvolve(
                x, z, ygrid, damping=config.damping, rule=config.damping_rule
            )
        return mcd_deconvolve(
            x, z, ygrid, bandwidth=config.bandwidth, kernel=config.kernel or "quartic"
        )
    if method == "dkm":
        if z is None:
            raise ValueError("The dkm method needs z")
        assert config.error is not None
        return dkm_deconvolve(
            z,
            config.error,
            ygrid,
            bandwidth=config.bandwidth,
            kernel=config.kernel or "quartic",
        )
    if z1 is None or z2 is None:
        raise ValueError("The rmd method needs the replicate columns z1 and z2")
    return rmd_deconvolve(
        z1,
        z2,
        ygrid,
        bandwidth=config.bandwidth,
        ridge=config.ridge,
        kernel=config.kernel or "quartic",
    )
