import pytest

from core.settings import OutputFormat
from schema import RateFit
from storage import get_writer, read_csv, read_json, write_json

FIT = RateFit(slope=2.0, intercept=0.5, r_value=1.0, stderr=0.0, points=5)


def test_json_round_trip(tmp_path) -> None:
    path = write_json(tmp_path / "fit.json", FIT)
    text = path.read_text(encoding="utf-8")
    assert text.endswith("}\n")
    assert read_json(path, RateFit) == FIT


def test_csv_writer_falls_back_to_scalars(tmp_path) -> None:
    writer = get_writer(OutputFormat.CSV)
    path = writer.write(tmp_path, "fit", FIT, None)
    assert path.name == "fit.csv"
    table = read_csv(path)
    assert table.columns == ("slope", "intercept", "r_value", "stderr", "points")
    assert table.column("points")[0] == 5.0


def test_json_writer(tmp_path) -> None:
    path = get_writer("json").write(tmp_path, "fit", FIT, None)
    assert path == tmp_path / "fit.json"


def test_unknown_format() -> None:
    with pytest.raises(ValueError, match="unknown output format 'xml'"):
        get_writer("xml")
