import csv
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray


@dataclass(frozen=True)
class Table:
    """Named float columns of equal length; NaN marks a missing value."""

    columns: tuple[str, ...]
    data: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.data.ndim != 2 or self.data.shape[1] != len(self.columns):
            raise ValueError(
                f"table data of shape {self.data.shape} does not match {len(self.columns)} columns"
            )

    @classmethod
    def from_columns(cls, columns: Mapping[str, ArrayLike]) -> "Table":
        arrays = [np.asarray(v, dtype=float).ravel() for v in columns.values()]
        sizes = {a.size for a in arrays}
        if len(sizes) > 1:
            raise ValueError(f"columns of unequal length: {sorted(sizes)}")
        data = np.column_stack(arrays) if arrays else np.empty((0, 0))
        return cls(tuple(columns), data)

    @classmethod
    def from_rows(cls, columns: Sequence[str], rows: Sequence[Sequence[float | None]]) -> "Table":
        data = np.array(
            [[math.nan if v is None else float(v) for v in row] for row in rows], dtype=float
        ).reshape(len(rows), len(columns))
        return cls(tuple(columns), data)

    def column(self, name: str) -> NDArray[np.float64]:
        return self.data[:, self.columns.index(name)]

    def __len__(self) -> int:
        return self.data.shape[0]


def format_value(value: float) -> str:
    return "" if math.isnan(value) else f"{value:.17g}"


def write_csv(path: Path, table: Table) -> Path:
    """Comma-separated, header row, LF line endings, %.17g floats and empty missing fields."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.data:
            writer.writerow([format_value(float(v)) for v in row])
    return path


def read_csv(path: Path) -> Table:
    with path.open(newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [[float(v) if v else None for v in row] for row in reader]
    return Table.from_rows(header, rows)
