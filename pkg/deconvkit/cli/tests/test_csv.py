from __future__ import annotations

import numpy as np
import pytest

from deconvkit.cli import CsvParseError, detect_layout, read_columns


def _write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_columns_of_different_length(tmp_path):
    path = _write(tmp_path, "x,z\n1.5,2\n-0.25,3e1\n,4\n,\n")
    columns = read_columns(path)
    np.testing.assert_array_equal(columns["x"], [1.5, -0.25])
    np.testing.assert_array_equal(columns["z"], [2, 30, 4])
    assert detect_layout(columns) == ("x", "z")


def test_layouts():
    one = np.ones(3)
    assert detect_layout({"z1": one, "z2": one, "id": one}) == ("z1", "z2")
    assert detect_layout({"z": one}) == ("z",)
    with pytest.raises(CsvParseError, match="x,z or z1,z2"):
        detect_layout({"a": one})


@pytest.mark.parametrize(
    "text,line,match",
    [
        ("x,z\n1,2\n,3\n4,5\n", 3, "Missing value"),
        ("x,z\n1,2\n2,3\nabc,4\n", 4, "abc"),
        ("x,z\n1,2\n2,nan\n", 3, "finite"),
        ("x,z\n1,2\n1,5\n", None, None),
        ("x,z\n1,2\n3,4,5\n", 3, "Malformed"),
        ("x,z\n1,2\n1;5,2\n", 3, "1;5"),
        ("x,x\n1,2\n", 1, "header"),
        ("", 1, "empty"),
    ],
)
def test_parse_errors(tmp_path, text, line, match):
    path = _write(tmp_path, text)
    if line is None:
        read_columns(path)
        return
    with pytest.raises(CsvParseError, match=match) as excinfo:
        read_columns(path)
    assert excinfo.value.line == line
    assert f"line {line}" in str(excinfo.value)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_columns(tmp_path / "nope.csv")
