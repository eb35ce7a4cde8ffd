from __future__ import annotations

from contextlib import contextmanager
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from ._typing import FloatArray, Seed


def as_sample(values: npt.ArrayLike, *, name: str = "sample") -> FloatArray:
    """Coerce `values` to a nonempty, finite, 1-dimensional float array.

    Parameters
    ----------
    values
        Anything numpy can turn into a 1d array of reals.
    name
        Used in error messages.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_rng(seed: Seed) -> np.random.Generator:
    """Turn an int, SeedSequence, Generator or None into a Generator.

    A Generator is passed through untouched, so callers can share a stream.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def equidistant_grid(lo: float, hi: float, n: int) -> FloatArray:
    """`n` equally spaced points from `lo` to `hi`, both included."""
    if n < 2:
        raise ValueError(f"Need at least 2 grid points, got {n}")
    if not hi > lo:
        raise ValueError(f"Grid needs hi > lo, got [{lo}, {hi}]")
    return np.linspace(lo, hi, n)


def is_equidistant(grid: npt.ArrayLike, rtol: float = 1e-9) -> bool:
    g = np.asarray(grid, dtype=np.float64)
    if g.ndim != 1 or g.size < 2:
        return False
    steps = np.diff(g)
    step = (g[-1] - g[0]) / (g.size - 1)
    if step <= 0:
        return False
    return bool(np.all(np.abs(steps - step) <= rtol * abs(step)))


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy containers and scalars to plain python."""
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


@contextmanager
def optional_import(pip_name: str):
    """
    Raises a more helpful ImportError when an optional dep is missing.

    with optional_import("vl-convert-python"):
        import vl_convert
    """
    try:
        yield
    except ImportError as e:
        raise ImportError(
            f"Package `{e.name}` is required for this functionality. "
            f"Please install it separately using `python -m pip install {pip_name}`."
        ) from e


def save_svg(chart: Any, path: str | Path) -> Path:
    """Render an altair chart to a static SVG file.

    The output only depends on the chart spec, so identical charts give
    byte-identical files.
    """
    with optional_import("vl-convert-python"):
        import vl_convert as vlc

    path = Path(path)
    svg = vlc.vegalite_to_svg(chart.to_json())
    path.write_text(svg, encoding="utf-8")
    return path
