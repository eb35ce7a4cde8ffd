from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
from scipy import special

from .._typing import ComplexArray
from ._family import Family, UnsupportedFamilyError

if TYPE_CHECKING:
    from ._spec import DistributionSpec


def cf(spec: DistributionSpec, t: npt.ArrayLike) -> ComplexArray:
    """Evaluate the characteristic function E[exp(itY)] at `t`.

    The result has the shape of `t`. cf(0) is exactly 1 and cf(-t) is the
    complex conjugate of cf(t).

    Raises
    ------
    UnsupportedFamilyError
        If the family (or a component of it) has no closed form, e.g. Weibull.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    with np.errstate(over="ignore", under="ignore"):
        values = _cf(spec, t_arr)
    return np.where(t_arr == 0, 1.0 + 0.0j, values)


def has_closed_form_cf(spec: DistributionSpec) -> bool:
    if spec.family == Family.WEIBULL:
        return False
    return all(has_closed_form_cf(c) for c in spec.components)


def _cf(spec: DistributionSpec, t: np.ndarray) -> ComplexArray:
    p = spec.params
    f = spec.family
    if f == Family.NORMAL:
        return np.exp(1j * p["loc"] * t - 0.5 * (p["scale"] * t) ** 2)
    if f == Family.LAPLACE:
        return np.exp(1j * p["loc"] * t) / (1 + (p["scale"] * t) ** 2)
    if f == Family.LAPLACE_KFOLD:
        return np.exp(1j * p["loc"] * t) / (1 + (p["scale"] * t) ** 2) ** p["k"]
    if f == Family.EXPONENTIAL:
        return 1 / (1 - 1j * t / p["rate"])
    if f == Family.GAMMA:
        return (1 - 1j * t / p["rate"]) ** (-p["shape"])
    if f == Family.CHI_SQUARE:
        return (1 - 2j * t) ** (-p["df"] / 2)
    if f == Family.SCALED_CHI_SQUARE:
        return (1 - 2j * t / p["divisor"]) ** (-p["df"] / 2)
    if f == Family.GUMBEL:
        return np.exp(special.loggamma(1 - 1j * p["scale"] * t) + 1j * p["loc"] * t)
    if f == Family.MIXTURE:
        total = np.zeros(t.shape, dtype=np.complex128)
        for w, c in zip(spec.weights, spec.components):
            total += w * _cf(c, t)
        return total
    if f == Family.CONVOLUTION:
        a, b = spec.components
        return _cf(a, t) * _cf(b, t)
    raise UnsupportedFamilyError(f, "the characteristic function")
