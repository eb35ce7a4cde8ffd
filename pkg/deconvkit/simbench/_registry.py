from __future__ import annotations

import functools
import math

from ..distributions import DistributionSpec as D
from ..npfd import NpfdConfig
from ._scenario import ScenarioSpec, UnknownScenarioError

# (target, convolving) of the two-sample scenarios against FDD
_FDD = [
    (D.gamma(4, 1), D.exponential(0.5)),
    (D.gamma(4, 1), D.exponential(0.25)),
    (D.gamma(4, 1), D.gamma(4, 2)),
    (D.gamma(4, 1), D.gamma(4, 1)),
    (D.chi_square(3), D.weibull(4, 12.44)),
    (D.chi_square(8), D.weibull(4, 12.44)),
    (D.gumbel(-12, math.sqrt(6) / math.pi), D.normal(9, 1)),
    (D.gumbel(-12, math.sqrt(6) / math.pi), D.normal(9, variance=2)),
]

_DKM = [
    (D.normal(0, 1), D.laplace(0, 0.5)),
    (D.mixture([D.normal(-3, 1), D.normal(3, 1)]), D.normal(0, 0.8)),
    (D.convolution(D.chi_square(3), D.gamma(2.25, 0.75)), D.normal(0, variance=2)),
    (D.convolution(D.chi_square(3), D.gamma(2.25, 0.75)), D.normal(0, variance=10)),
]

_STANDARD_CHI3 = D.scaled_chi_square(3, math.sqrt(6))
_RMD = [
    (_STANDARD_CHI3, D.normal(0, variance=0.2)),
    (_STANDARD_CHI3, D.normal(0, variance=1)),
    (D.gamma(12, math.sqrt(3)), D.normal(0, variance=4)),
    (D.convolution(D.chi_square(1.5), D.normal(0, 1)), D.normal(0, variance=1)),
]

_HET_N = 500


def _het_variances(scenario: int, n: int = _HET_N) -> list[float]:
    i = [k + 1 for k in range(n)]
    base = scenario if scenario <= 3 else scenario - 3
    if base == 1:
        variances = [0.025 if k <= n // 2 else 0.975 for k in i]
    elif base == 2:
        variances = [0.25 + 0.5 * k / n for k in i]
    else:
        variances = [0.025 + 0.95 * k / n for k in i]
    factor = 1 if scenario <= 3 else 2
    return [factor * v for v in variances]


def _heteroscedastic_error(scenario: int) -> D:
    return D.mixture([D.normal(0, variance=v) for v in _het_variances(scenario)])


def _fdd_scenarios() -> list[ScenarioSpec]:
    out = []
    for k, (target, convolving) in enumerate(_FDD, start=1):
        npfd = NpfdConfig(df_x=3) if k in (1, 2) else NpfdConfig()
        for n, suffix in ((500, ""), (100, "-n100")):
            out.append(
                ScenarioSpec(
                    id=f"fdd-{k}{suffix}",
                    description=f"Y ~ {target!r}, X ~ {convolving!r}, n = {n}",
                    target=target,
                    convolving=convolving,
                    n_x=n,
                    n_z=n,
                    methods=("npfd", "fdd"),
                    npfd=npfd,
                )
            )
    return out


def _mcd_scenarios() -> list[ScenarioSpec]:
    out = []
    for k in range(1, 6):
        target = D.laplace_kfold(6 - k)
        convolving = D.laplace_kfold(k)
        for (n_x, n_z), suffix in (((10, 200), ""), ((500, 1000), "-large")):
            # tiny error samples call for the looser threshold n_x^{-1/2}
            npfd = NpfdConfig(epsilon=n_x**-0.5) if not suffix else NpfdConfig()
            out.append(
                ScenarioSpec(
                    id=f"mcd-{k}{suffix}",
                    description=f"{6 - k}-fold Laplace target, {k}-fold Laplace error",
                    target=target,
                    convolving=convolving,
                    n_x=n_x,
                    n_z=n_z,
                    methods=("npfd", "mcd"),
                    npfd=npfd,
                )
            )
    return out


def _dkm_scenarios() -> list[ScenarioSpec]:
    out = []
    for k, (target, convolving) in enumerate(_DKM, start=1):
        if k == 2:
            # a power above 1 merges the two modes of the target
            npfd = NpfdConfig(n_max=1, epsilon=0.03)
            n = 1000
        else:
            npfd = NpfdConfig()
            n = 500
        out.append(
            ScenarioSpec(
                id=f"dkm-{k}",
                description=f"Y ~ {target!r}, known error {convolving!r}",
                target=target,
                convolving=convolving,
                mode="known-error",
                n_x=n,
                n_z=n,
                methods=("npfd", "dkm"),
                npfd=npfd,
            )
        )
    return out


def _rmd_scenarios() -> list[ScenarioSpec]:
    out = []
    for k, (target, convolving) in enumerate(_RMD, start=1):
        npfd = NpfdConfig(clip_negative=True)
        if k in (1, 2):
            npfd = npfd.with_overrides(epsilon=0.1)
        out.append(
            ScenarioSpec(
                id=f"rmd-{k}",
                description=f"Y ~ {target!r}, replicated with error {convolving!r}",
                target=target,
                convolving=convolving,
                mode="replicates",
                methods=("npfd", "rmd"),
                npfd=npfd,
            )
        )
    return out


def _het_scenarios() -> list[ScenarioSpec]:
    out = []
    for k in range(1, 7):
        out.append(
            ScenarioSpec(
                id=f"het-{k}",
                description="Standardized chi-square(3) target, per-unit normal errors",
                target=_STANDARD_CHI3,
                convolving=_heteroscedastic_error(k),
                mode="replicates",
                n_x=_HET_N,
                n_z=_HET_N,
                methods=("npfd", "rmd"),
                npfd=NpfdConfig(clip_negative=True),
                stratified_error=True,
            )
        )
    return out


@functools.lru_cache(maxsize=None)
def _registry() -> dict[str, ScenarioSpec]:
    scenarios = (
        _fdd_scenarios()
        + _mcd_scenarios()
        + _dkm_scenarios()
        + _rmd_scenarios()
        + _het_scenarios()
    )
    return {s.id: s for s in scenarios}


def builtin_scenarios() -> list[ScenarioSpec]:
    """Every built-in simulation scenario, in registry order."""
    return list(_registry().values())


def get_scenario(scenario_id: str) -> ScenarioSpec:
    """Look up a built-in scenario by id.

    Raises
    ------
    UnknownScenarioError
        If there is no such scenario.
    """
    try:
        return _registry()[scenario_id]
    except KeyError:
        raise UnknownScenarioError(scenario_id) from None
