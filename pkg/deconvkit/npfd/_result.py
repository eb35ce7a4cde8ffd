from __future__ import annotations

import dataclasses
from json import dumps, loads
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from .._typing import FloatArray, Self
from .._util import to_jsonable
from ..fourier import FourierEstimate, TGrid
from ._transform import TransformConstants


def _estimate_to_dict(est: FourierEstimate) -> dict[str, Any]:
    return {
        "K": est.grid.K,
        "t_max": est.grid.t_max,
        "re": est.values.real.tolist(),
        "im": est.values.imag.tolist(),
    }


def _estimate_from_dict(d: dict[str, Any]) -> FourierEstimate:
    values = np.asarray(d["re"]) + 1j * np.asarray(d["im"])
    return FourierEstimate(TGrid(d["K"], d["t_max"]), values)


@dataclasses.dataclass(frozen=True, eq=False)
class NpfdResult:
    """The output of an NPFD deconvolution.

    `window` holds the rescaled quotient φ̂_Ỹ on the scan grid points inside
    [-γ, γ], before it is raised to the N-th power. `quotient` holds the
    powered quotient on the inversion grid, the one actually inverted.
    """

    N: int
    gamma: float
    R: int
    constants: TransformConstants
    ygrid: FloatArray
    density: FloatArray
    diagnostics: dict[str, Any]
    window: FourierEstimate
    quotient: FourierEstimate
    ft_method: str
    epsilon: float
    grid_t_max: float

    @property
    def hit_n_max(self) -> bool:
        return bool(self.diagnostics.get("hit_n_max", False))

    def to_frame(self) -> pd.DataFrame:
        """A table with columns y and fhat."""
        return pd.DataFrame({"y": self.ygrid, "fhat": self.density})

    def to_csv(self, path: str | Path) -> None:
        self.to_frame().to_csv(path, index=False)

    def to_json(self, path: str | Path | None = None) -> dict[str, Any]:
        """Return a JSON-serializable dict, also writing it to `path` if given."""
        d = {
            "N": self.N,
            "gamma": self.gamma,
            "R": self.R,
            "constants": self.constants.to_dict(),
            "ygrid": self.ygrid.tolist(),
            "density": self.density.tolist(),
            "diagnostics": to_jsonable(self.diagnostics),
            "ft_method": self.ft_method,
            "epsilon": self.epsilon,
            "grid_t_max": self.grid_t_max,
            "window": _estimate_to_dict(self.window),
            "quotient": _estimate_to_dict(self.quotient),
        }
        if path is not None:
            Path(path).write_text(dumps(d, indent=2))
        return d

    @classmethod
    def from_json(cls, json: dict | str | Path) -> Self:
        """Load from a dict as made by `to_json`, or from a path to a JSON file."""
        if not isinstance(json, dict):
            json = loads(Path(json).read_text())
        c = json["constants"]
        return cls(
            N=json["N"],
            gamma=json["gamma"],
            R=json["R"],
            constants=TransformConstants(c["N"], c["a"], c["b_x"], c["b_z"]),
            ygrid=np.asarray(json["ygrid"], dtype=np.float64),
            density=np.asarray(json["density"], dtype=np.float64),
            diagnostics=dict(json["diagnostics"]),
            window=_estimate_from_dict(json["window"]),
            quotient=_estimate_from_dict(json["quotient"]),
            ft_method=json["ft_method"],
            epsilon=json["epsilon"],
            grid_t_max=json["grid_t_max"],
        )

    def __repr__(self) -> str:
        return (
            f"NpfdResult(N={self.N}, gamma={self.gamma:g}, R={self.R}, "
            f"ft_method={self.ft_method!r}, n_y={self.ygrid.size})"
        )
