from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from .._util import as_sample

logger = logging.getLogger(__name__)


class DataQualityWarning(UserWarning):
    """The data or an intermediate estimate looks suspicious, but we carry on."""


class VarianceOrderError(ValueError):
    """Var(z) does not exceed Var(x), so there is nothing left to deconvolve."""


def check_variance_order(
    x: npt.ArrayLike | float, z: npt.ArrayLike, *, rtol: float = 1e-9
) -> None:
    """Require the empirical variance of `z` to exceed that of `x`.

    `x` may also be a known variance. Differences within `rtol` of the
    larger variance count as equal, so z = x + c is rejected despite
    rounding.

    Raises
    ------
    VarianceOrderError
        If Var(z) <= Var(x).
    """
    var_x = float(x) if np.ndim(x) == 0 else float(np.var(as_sample(x, name="x")))
    var_z = float(np.var(as_sample(z, name="z")))
    if var_z - var_x <= rtol * max(abs(var_x), abs(var_z)):
        raise VarianceOrderError(
            f"Violated variance order: Var(z) = {var_z:.6g} must exceed "
            f"Var(x) = {var_x:.6g}"
        )
    logger.debug("Variance order ok: Var(x) = %.6g < Var(z) = %.6g", var_x, var_z)
