import logging
from pathlib import Path
from typing import Protocol, TypeVar

from pydantic import BaseModel

from core.settings import OutputFormat
from storage.tables import Table, write_csv

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


class RecordWriter(Protocol):
    suffix: str

    def write(self, directory: Path, name: str, record: BaseModel, table: Table | None) -> Path: ...


def write_json(path: Path, record: BaseModel) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(record.model_dump_json(indent=2, by_alias=True) + "\n", encoding="utf-8")
    return path


def read_json(path: Path, model: type[M]) -> M:
    return model.model_validate_json(path.read_text(encoding="utf-8"))


def scalar_table(record: BaseModel) -> Table:
    """One row with the record's numeric and boolean top-level fields."""
    row = {
        k: float(v)
        for k, v in record.model_dump().items()
        if isinstance(v, int | float) and v is not None
    }
    return Table.from_columns({k: [v] for k, v in row.items()})


class JsonWriter:
    suffix = ".json"

    def write(self, directory: Path, name: str, record: BaseModel, table: Table | None) -> Path:
        return write_json(directory / f"{name}{self.suffix}", record)


class CsvWriter:
    suffix = ".csv"

    def write(self, directory: Path, name: str, record: BaseModel, table: Table | None) -> Path:
        if table is None:
            table = scalar_table(record)
        return write_csv(directory / f"{name}{self.suffix}", table)


WRITERS: dict[OutputFormat, RecordWriter] = {
    OutputFormat.JSON: JsonWriter(),
    OutputFormat.CSV: CsvWriter(),
}


def get_writer(output_format: OutputFormat | str) -> RecordWriter:
    """Writer for the selected output format."""
    try:
        return WRITERS[OutputFormat(output_format)]
    except ValueError:
        choices = [f.value for f in OutputFormat]
        raise ValueError(f"unknown output format {output_format!r}; use one of {choices}") from None
