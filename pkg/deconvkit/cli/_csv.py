from __future__ import annotations

import logging
from pathlib import Path
import re

import numpy as np
import pandas as pd

from .._typing import FloatArray

logger = logging.getLogger(__name__)

HEADER_LINE = 1

# the column layouts deconvolve understands, in order of preference
LAYOUTS: tuple[tuple[str, ...], ...] = (("x", "z"), ("z1", "z2"), ("z",))


class CsvParseError(ValueError):
    """A CSV input could not be read. `line` is the 1-based file line, if known."""

    def __init__(
        self, message: str, line: int | None = None, path: str | Path | None = None
    ) -> None:
        self.line = line
        self.path = None if path is None else Path(path)
        where = "" if path is None else f"{path}"
        if line is not None:
            where = f"{where}, line {line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


def read_columns(path: str | Path) -> dict[str, FloatArray]:
    """Read a comma-separated file of numeric columns with a header row.

    Columns may have different lengths: empty cells at the end of a column
    are dropped. Any other empty cell, a non-numeric or non-finite value or
    a row with too many fields is an error.

    Raises
    ------
    FileNotFoundError
        If `path` does not exist.
    CsvParseError
        With the 1-based line of the first bad cell.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"No such input file: {path}")
    try:
        frame = pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise CsvParseError("The file is empty", HEADER_LINE, path) from None
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        line = int(match.group(1)) if match else None
        raise CsvParseError(f"Malformed row: {e}", line, path) from None
    except UnicodeDecodeError:
        raise CsvParseError("The file is not UTF-8", None, path) from None
    names = frame.iloc[0].fillna("").str.strip().tolist()
    if len(set(names)) != len(names) or not all(names):
        raise CsvParseError(f"Bad header {names}", HEADER_LINE, path)
    body = frame.iloc[1:]
    columns = {
        name: _parse_column(body[i], name, path) for i, name in zip(body.columns, names)
    }
    logger.info(
        "Read %s: %s",
        path,
        ", ".join(f"{k} ({v.size} values)" for k, v in columns.items()),
    )
    return columns


def _parse_column(cells: pd.Series, name: str, path: Path) -> FloatArray:
    text = cells.fillna("").str.strip()
    filled = (text != "").to_numpy()
    if not filled.any():
        raise CsvParseError(f"Column {name!r} is empty", HEADER_LINE, path)
    length = int(np.flatnonzero(filled)[-1]) + 1
    gaps = np.flatnonzero(~filled[:length])
    if gaps.size:
        raise CsvParseError(
            f"Missing value in column {name!r}", _line(int(gaps[0])), path
        )
    text = text.iloc[:length]
    values = pd.to_numeric(text, errors="coerce").to_numpy(dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        i = int(bad[0])
        raise CsvParseError(
            f"Not a finite number in column {name!r}: {text.iloc[i]!r}", _line(i), path
        )
    return values


def _line(row: int) -> int:
    return row + HEADER_LINE + 1


def detect_layout(
    columns: dict[str, FloatArray], path: str | Path | None = None
) -> tuple[str, ...]:
    """Which of x,z / z1,z2 / z the file holds.

    Raises
    ------
    CsvParseError
        If none of them is present.
    """
    for layout in LAYOUTS:
        if all(name in columns for name in layout):
            return layout
    raise CsvParseError(
        f"Expected columns x,z or z1,z2 or z, got {','.join(columns)}",
        HEADER_LINE,
        path,
    )
