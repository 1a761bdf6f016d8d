import math

import numpy as np
import pytest

from storage import Table, read_csv, write_csv


def test_csv_format(tmp_path) -> None:
    table = Table.from_columns({"t": [0.0, 0.1], "u": [math.nan, 1.0 / 3.0]})
    path = write_csv(tmp_path / "out" / "table.csv", table)
    assert path.read_bytes() == b"t,u\n0,\n0.10000000000000001,0.33333333333333331\n"


def test_csv_read_back(tmp_path) -> None:
    table = Table.from_columns({"alpha": [-1.5, 2.0e-20], "G": [math.pi, math.nan]})
    loaded = read_csv(write_csv(tmp_path / "g.csv", table))
    assert loaded.columns == ("alpha", "G")
    assert len(loaded) == 2
    np.testing.assert_array_equal(loaded.column("alpha"), table.column("alpha"))
    assert loaded.column("G")[0] == math.pi
    assert math.isnan(loaded.column("G")[1])


def test_from_rows_marks_missing_values() -> None:
    table = Table.from_rows(("a", "b"), [(1.0, None), (2.0, 3.0)])
    assert math.isnan(table.column("b")[0])
    assert Table.from_rows(("a", "b"), []).data.shape == (0, 2)


def test_shape_checks() -> None:
    with pytest.raises(ValueError, match="unequal length"):
        Table.from_columns({"a": [1.0], "b": [1.0, 2.0]})
    with pytest.raises(ValueError, match="does not match"):
        Table(("a",), np.zeros((2, 2)))
