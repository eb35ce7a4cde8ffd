from __future__ import annotations

from enum import Enum


class Family(str, Enum):
    """The parametric families a DistributionSpec can describe."""

    NORMAL = "normal"
    LAPLACE = "laplace"
    EXPONENTIAL = "exponential"
    GAMMA = "gamma"
    WEIBULL = "weibull"
    GUMBEL = "gumbel"
    CHI_SQUARE = "chi_square"
    SCALED_CHI_SQUARE = "scaled_chi_square"
    LAPLACE_KFOLD = "laplace_kfold"
    MIXTURE = "mixture"
    CONVOLUTION = "convolution"


class ParameterError(ValueError):
    """A distribution was given invalid parameters."""


class UnsupportedFamilyError(ValueError):
    """The operation needs a closed form that this family does not have."""

    def __init__(self, family: Family, operation: str) -> None:
        self.family = family
        self.operation = operation
        super().__init__(
            f"The {family.value} family has no closed form for {operation}"
        )


# (name, must be positive) for every scalar parameter, in canonical order
SCALAR_PARAMS: dict[Family, tuple[tuple[str, bool], ...]] = {
    Family.NORMAL: (("loc", False), ("scale", True)),
    Family.LAPLACE: (("loc", False), ("scale", True)),
    Family.EXPONENTIAL: (("rate", True),),
    Family.GAMMA: (("shape", True), ("rate", True)),
    Family.WEIBULL: (("shape", True), ("scale", True)),
    Family.GUMBEL: (("loc", False), ("scale", True)),
    Family.CHI_SQUARE: (("df", True),),
    Family.SCALED_CHI_SQUARE: (("df", True), ("divisor", True)),
    Family.LAPLACE_KFOLD: (("k", True), ("loc", False), ("scale", True)),
    Family.MIXTURE: (),
    Family.CONVOLUTION: (),
}

SYMMETRIC_FAMILIES = frozenset({Family.NORMAL, Family.LAPLACE, Family.LAPLACE_KFOLD})
