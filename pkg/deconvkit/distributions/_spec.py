from __future__ import annotations

from json import dumps, loads
import math
from pathlib import Path
from types import MappingProxyType
from typing import Any, Iterable, Mapping

import numpy.typing as npt

from .._typing import ComplexArray, FloatArray, Seed, Self
from ._family import (
    SCALAR_PARAMS,
    SYMMETRIC_FAMILIES,
    Family,
    ParameterError,
)


class DistributionSpec:
    """A parametric family together with its parameters.

    Specs are immutable and hashable, so they can key caches of tabulated
    densities. Build them with the family constructors, e.g.
    `DistributionSpec.gamma(shape=4, rate=1)`, rather than by hand.

    Normal, Laplace and Gumbel are parametrized by (loc, scale), Exponential and
    Gamma by rate, Weibull by (shape, scale). LaplaceKFold is the sum of `k`
    independent Laplace(0, scale) variables shifted by `loc`.
    """

    def __init__(self, family: Family | str, params: Mapping[str, Any]) -> None:
        """Create a spec, validating the parameters for the family."""
        try:
            self._family = Family(family)
        except ValueError:
            raise ParameterError(f"Unknown distribution family: {family!r}") from None
        self._params = MappingProxyType(_validate(self._family, dict(params)))

    @classmethod
    def normal(
        cls,
        loc: float = 0.0,
        scale: float | None = None,
        *,
        variance: float | None = None,
    ) -> Self:
        """Normal with standard deviation `scale`, or give `variance` instead."""
        return cls(Family.NORMAL, {"loc": loc, "scale": _scale(scale, variance)})

    @classmethod
    def laplace(cls, loc: float = 0.0, scale: float = 1.0) -> Self:
        return cls(Family.LAPLACE, {"loc": loc, "scale": scale})

    @classmethod
    def exponential(cls, rate: float = 1.0) -> Self:
        return cls(Family.EXPONENTIAL, {"rate": rate})

    @classmethod
    def gamma(cls, shape: float, rate: float = 1.0) -> Self:
        return cls(Family.GAMMA, {"shape": shape, "rate": rate})

    @classmethod
    def weibull(cls, shape: float, scale: float = 1.0) -> Self:
        return cls(Family.WEIBULL, {"shape": shape, "scale": scale})

    @classmethod
    def gumbel(cls, loc: float = 0.0, scale: float = 1.0) -> Self:
        return cls(Family.GUMBEL, {"loc": loc, "scale": scale})

    @classmethod
    def chi_square(cls, df: float) -> Self:
        return cls(Family.CHI_SQUARE, {"df": df})

    @classmethod
    def scaled_chi_square(cls, df: float, divisor: float) -> Self:
        """A chi-square variable divided by `divisor`, e.g. χ²₃/√6."""
        return cls(Family.SCALED_CHI_SQUARE, {"df": df, "divisor": divisor})

    @classmethod
    def laplace_kfold(cls, k: int, loc: float = 0.0, scale: float = 1.0) -> Self:
        return cls(Family.LAPLACE_KFOLD, {"k": k, "loc": loc, "scale": scale})

    @classmethod
    def mixture(
        cls,
        components: Iterable[DistributionSpec],
        weights: Iterable[float] | None = None,
    ) -> Self:
        """A finite mixture. Equal weights if `weights` is None."""
        components = tuple(components)
        if weights is None:
            weights = [1 / len(components)] * len(components) if components else []
        return cls(Family.MIXTURE, {"components": components, "weights": weights})

    @classmethod
    def convolution(cls, a: DistributionSpec, b: DistributionSpec) -> Self:
        """The distribution of A + B for independent A and B."""
        return cls(Family.CONVOLUTION, {"components": (a, b)})

    @property
    def family(self) -> Family:
        return self._family

    @property
    def params(self) -> Mapping[str, Any]:
        """The (read-only) parameters of the family."""
        return self._params

    @property
    def components(self) -> tuple[DistributionSpec, ...]:
        """The component specs of a Mixture or Convolution, else empty."""
        return self._params.get("components", ())

    @property
    def weights(self) -> tuple[float, ...]:
        return self._params.get("weights", ())

    @property
    def mean(self) -> float:
        """The analytic expectation."""
        return _mean(self)

    @property
    def variance(self) -> float:
        """The analytic variance."""
        return _variance(self)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    @property
    def support(self) -> tuple[float, float]:
        """The closed interval outside of which the density is zero."""
        return _support(self)

    @property
    def is_symmetric(self) -> bool:
        """Whether the density is known to be symmetric around `self.mean`."""
        if self.family in SYMMETRIC_FAMILIES:
            return True
        if self.family == Family.CONVOLUTION:
            return all(c.is_symmetric for c in self.components)
        return False

    def sample(
        self, n: int, seed: Seed = None, *, stratified: bool = False
    ) -> FloatArray:
        from ._sampling import sample

        return sample(self, n, seed, stratified=stratified)

    def pdf(self, y: npt.ArrayLike) -> FloatArray:
        from ._density import pdf

        return pdf(self, y)

    def cf(self, t: npt.ArrayLike) -> ComplexArray:
        from ._cf import cf

        return cf(self, t)

    def to_dict(self) -> dict[str, Any]:
        """A JSON-compatible dict of {"family": ..., "params": {...}}."""
        params: dict[str, Any] = {}
        for key, value in self._params.items():
            if key == "components":
                params[key] = [c.to_dict() for c in value]
            elif key == "weights":
                params[key] = list(value)
            else:
                params[key] = value
        return {"family": self.family.value, "params": params}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Self:
        try:
            family = d["family"]
            params = dict(d.get("params", {}))
        except (KeyError, TypeError) as e:
            raise ParameterError(f"Not a distribution spec: {d!r}") from e
        if "components" in params:
            params["components"] = tuple(
                cls.from_dict(c) for c in params["components"]
            )
        return cls(family, params)

    def to_json(self, path: str | Path | None = None) -> str:
        """Serialize to JSON, optionally also writing it to `path`."""
        s = dumps(self.to_dict(), indent=2)
        if path is not None:
            Path(path).write_text(s)
        return s

    @classmethod
    def from_json(cls, json: str | Path) -> Self:
        """Load from a JSON string or a path to a JSON file."""
        if isinstance(json, Path) or not str(json).lstrip().startswith("{"):
            json = Path(json).read_text()
        return cls.from_dict(loads(json))

    def _key(self) -> tuple:
        return (self.family, tuple(self._params.items()))

    def __hash__(self) -> int:
        return hash(self._key())

    def __reduce__(self) -> tuple:
        # mappingproxy does not pickle
        return (type(self), (self._family.value, dict(self._params)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistributionSpec):
            return False
        return self._key() == other._key()

    def __repr__(self) -> str:
        if self.family == Family.MIXTURE:
            inner = ", ".join(
                f"{w:g}*{c!r}" for w, c in zip(self.weights, self.components)
            )
            if len(self.components) > 4:
                inner = f"{len(self.components)} components"
            return f"Mixture({inner})"
        if self.family == Family.CONVOLUTION:
            a, b = self.components
            return f"Convolution({a!r}, {b!r})"
        args = ", ".join(f"{k}={v:g}" for k, v in self._params.items())
        return f"{self.family.name.title().replace('_', '')}({args})"


def _scale(scale: float | None, variance: float | None) -> float:
    if variance is not None:
        if scale is not None:
            raise ParameterError("Give either scale or variance, not both")
        if not variance > 0:
            raise ParameterError(f"variance must be > 0, got {variance}")
        return math.sqrt(variance)
    return 1.0 if scale is None else scale


def _validate(family: Family, params: dict[str, Any]) -> dict[str, Any]:
    if family == Family.MIXTURE:
        return _validate_mixture(params)
    if family == Family.CONVOLUTION:
        return _validate_convolution(params)
    expected = SCALAR_PARAMS[family]
    names = [name for name, _ in expected]
    extra = set(params) - set(names)
    if extra:
        raise ParameterError(f"Unexpected parameters for {family.value}: {extra}")
    result: dict[str, Any] = {}
    for name, positive in expected:
        if name not in params:
            if family == Family.LAPLACE_KFOLD and name in ("loc", "scale"):
                params[name] = 0.0 if name == "loc" else 1.0
            else:
                raise ParameterError(f"Missing parameter {name!r} for {family.value}")
        value = params[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ParameterError(
                    f"Parameter {name!r} must be a real number, got {value!r}"
                ) from None
        if not math.isfinite(value):
            raise ParameterError(f"Parameter {name!r} must be finite, got {value}")
        if positive and not value > 0:
            raise ParameterError(f"Parameter {name!r} must be > 0, got {value}")
        result[name] = float(value)
    if family == Family.LAPLACE_KFOLD:
        k = result["k"]
        if k != int(k) or k < 1:
            raise ParameterError(f"k must be an integer >= 1, got {k}")
        result["k"] = int(k)
    return result


def _validate_mixture(params: dict[str, Any]) -> dict[str, Any]:
    components = tuple(params.get("components", ()))
    weights = tuple(float(w) for w in params.get("weights", ()))
    if not components:
        raise ParameterError("A mixture needs at least one component")
    if not all(isinstance(c, DistributionSpec) for c in components):
        raise ParameterError("Mixture components must be DistributionSpecs")
    if len(weights) != len(components):
        raise ParameterError(
            f"Got {len(weights)} weights for {len(components)} components"
        )
    if any(not math.isfinite(w) or w < 0 for w in weights):
        raise ParameterError(f"Mixture weights must be >= 0, got {weights}")
    if abs(math.fsum(weights) - 1) > 1e-12:
        raise ParameterError(f"Mixture weights must sum to 1, got {math.fsum(weights)}")
    return {"components": components, "weights": weights}


def _validate_convolution(params: dict[str, Any]) -> dict[str, Any]:
    components = tuple(params.get("components", ()))
    if len(components) != 2:
        raise ParameterError(
            f"A convolution holds exactly two components, got {len(components)}"
        )
    if not all(isinstance(c, DistributionSpec) for c in components):
        raise ParameterError("Convolution components must be DistributionSpecs")
    return {"components": components}


def _mean(spec: DistributionSpec) -> float:
    p = spec.params
    f = spec.family
    if f in (Family.NORMAL, Family.LAPLACE, Family.LAPLACE_KFOLD):
        return p["loc"]
    if f == Family.EXPONENTIAL:
        return 1 / p["rate"]
    if f == Family.GAMMA:
        return p["shape"] / p["rate"]
    if f == Family.WEIBULL:
        return p["scale"] * math.gamma(1 + 1 / p["shape"])
    if f == Family.GUMBEL:
        return p["loc"] + 0.5772156649015329 * p["scale"]
    if f == Family.CHI_SQUARE:
        return p["df"]
    if f == Family.SCALED_CHI_SQUARE:
        return p["df"] / p["divisor"]
    if f == Family.MIXTURE:
        return math.fsum(w * c.mean for w, c in zip(spec.weights, spec.components))
    a, b = spec.components
    return a.mean + b.mean


def _variance(spec: DistributionSpec) -> float:
    p = spec.params
    f = spec.family
    if f == Family.NORMAL:
        return p["scale"] ** 2
    if f == Family.LAPLACE:
        return 2 * p["scale"] ** 2
    if f == Family.LAPLACE_KFOLD:
        return 2 * p["k"] * p["scale"] ** 2
    if f == Family.EXPONENTIAL:
        return 1 / p["rate"] ** 2
    if f == Family.GAMMA:
        return p["shape"] / p["rate"] ** 2
    if f == Family.WEIBULL:
        g1 = math.gamma(1 + 1 / p["shape"])
        g2 = math.gamma(1 + 2 / p["shape"])
        return p["scale"] ** 2 * (g2 - g1**2)
    if f == Family.GUMBEL:
        return (math.pi * p["scale"]) ** 2 / 6
    if f == Family.CHI_SQUARE:
        return 2 * p["df"]
    if f == Family.SCALED_CHI_SQUARE:
        return 2 * p["df"] / p["divisor"] ** 2
    if f == Family.MIXTURE:
        mu = spec.mean
        second = math.fsum(
            w * (c.variance + c.mean**2) for w, c in zip(spec.weights, spec.components)
        )
        return second - mu**2
    a, b = spec.components
    return a.variance + b.variance


def _support(spec: DistributionSpec) -> tuple[float, float]:
    f = spec.family
    if f in (
        Family.EXPONENTIAL,
        Family.GAMMA,
        Family.WEIBULL,
        Family.CHI_SQUARE,
        Family.SCALED_CHI_SQUARE,
    ):
        return (0.0, math.inf)
    if f == Family.MIXTURE:
        bounds = [c.support for c in spec.components]
        return (min(lo for lo, _ in bounds), max(hi for _, hi in bounds))
    if f == Family.CONVOLUTION:
        (alo, ahi), (blo, bhi) = (c.support for c in spec.components)
        return (alo + blo, ahi + bhi)
    return (-math.inf, math.inf)
