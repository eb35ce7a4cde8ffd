from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .._typing import FloatArray, Seed
from .._util import as_rng
from ._family import Family, ParameterError

if TYPE_CHECKING:
    from ._spec import DistributionSpec


def sample(
    spec: DistributionSpec, n: int, seed: Seed = None, *, stratified: bool = False
) -> FloatArray:
    """Draw `n` i.i.d. values from `spec`.

    The draws are a pure function of (spec, n, seed) when `seed` is an int or a
    SeedSequence. Passing a Generator advances it, which lets callers chain
    several draws from one stream.

    Parameters
    ----------
    spec
        What to sample from.
    n
        How many draws, at least 1.
    seed
        Seed for numpy's default generator.
    stratified
        Only for mixtures: allocate draws to the components exactly in
        proportion to the weights, in component order, instead of at random.
        With `n` equally weighted components and `n` draws, draw i comes from
        component i, which is how per-unit heteroscedastic errors are drawn.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ParameterError(f"n must be an integer >= 1, got {n}")
    rng = as_rng(seed)
    return _sample(spec, int(n), rng, stratified)


def _sample(
    spec: DistributionSpec, n: int, rng: np.random.Generator, stratified: bool
) -> FloatArray:
    p = spec.params
    f = spec.family
    if f == Family.NORMAL:
        return rng.normal(p["loc"], p["scale"], n)
    if f == Family.LAPLACE:
        return rng.laplace(p["loc"], p["scale"], n)
    if f == Family.LAPLACE_KFOLD:
        draws = rng.laplace(0.0, 1.0, size=(n, p["k"]))
        return p["loc"] + p["scale"] * draws.sum(axis=1)
    if f == Family.EXPONENTIAL:
        return rng.exponential(1 / p["rate"], n)
    if f == Family.GAMMA:
        return rng.gamma(p["shape"], 1 / p["rate"], n)
    if f == Family.WEIBULL:
        return p["scale"] * rng.weibull(p["shape"], n)
    if f == Family.GUMBEL:
        return rng.gumbel(p["loc"], p["scale"], n)
    if f == Family.CHI_SQUARE:
        return rng.chisquare(p["df"], n)
    if f == Family.SCALED_CHI_SQUARE:
        return rng.chisquare(p["df"], n) / p["divisor"]
    if f == Family.MIXTURE:
        if stratified:
            return _sample_stratified(spec, n, rng)
        return _sample_mixture(spec, n, rng)
    a, b = spec.components
    return _sample(a, n, rng, False) + _sample(b, n, rng, False)


def _sample_mixture(
    spec: DistributionSpec, n: int, rng: np.random.Generator
) -> FloatArray:
    weights = np.asarray(spec.weights)
    which = rng.choice(len(weights), size=n, p=weights / weights.sum())
    out = np.empty(n, dtype=np.float64)
    for i, component in enumerate(spec.components):
        mask = which == i
        count = int(mask.sum())
        if count:
            out[mask] = _sample(component, count, rng, False)
    return out


def _sample_stratified(
    spec: DistributionSpec, n: int, rng: np.random.Generator
) -> FloatArray:
    counts = stratified_counts(spec.weights, n)
    parts = [
        _sample(component, count, rng, False)
        for component, count in zip(spec.components, counts)
        if count
    ]
    return np.concatenate(parts)


def stratified_counts(weights: tuple[float, ...] | list[float], n: int) -> list[int]:
    """Split `n` into integer counts proportional to `weights`.

    Largest-remainder rounding, ties going to the earlier component.
    """
    exact = np.asarray(weights, dtype=np.float64) * n
    counts = np.floor(exact).astype(int)
    remainder = n - int(counts.sum())
    if remainder > 0:
        order = np.argsort(-(exact - counts), kind="stable")
        counts[order[:remainder]] += 1
    return counts.tolist()
