from __future__ import annotations

import dataclasses
from json import dumps, loads
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from .._typing import FloatArray, Self
from .._util import to_jsonable


@dataclasses.dataclass(frozen=True, eq=False)
class BaselineResult:
    """A density estimate from one of the comparison methods."""

    method: str
    ygrid: FloatArray
    density: FloatArray
    diagnostics: dict[str, Any] = dataclasses.field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        """A table with columns y and fhat."""
        return pd.DataFrame({"y": self.ygrid, "fhat": self.density})

    def to_csv(self, path: str | Path) -> None:
        self.to_frame().to_csv(path, index=False)

    def to_json(self, path: str | Path | None = None) -> dict[str, Any]:
        """Return a JSON-serializable dict, also writing it to `path` if given."""
        d = {
            "method": self.method,
            "ygrid": self.ygrid.tolist(),
            "density": self.density.tolist(),
            "diagnostics": to_jsonable(self.diagnostics),
        }
        if path is not None:
            Path(path).write_text(dumps(d, indent=2))
        return d

    @classmethod
    def from_json(cls, json: dict | str | Path) -> Self:
        if not isinstance(json, dict):
            json = loads(Path(json).read_text())
        return cls(
            method=json["method"],
            ygrid=np.asarray(json["ygrid"], dtype=np.float64),
            density=np.asarray(json["density"], dtype=np.float64),
            diagnostics=dict(json.get("diagnostics", {})),
        )

    def __repr__(self) -> str:
        return f"BaselineResult(method={self.method!r}, n_y={self.ygrid.size})"
