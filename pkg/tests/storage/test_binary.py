import numpy as np
import pytest

from core.errors import TrajectoryFormatError
from core.problem import ProblemParams
from integrator import integrate_truncated
from storage import read_trajectory, write_samples, write_trajectory
from storage.binary import HEADER, MAGIC, VERSION


def test_header_layout(tmp_path) -> None:
    path = write_samples(tmp_path / "s.dtraj", [0.0, 1.0, 2.0], [[1.0, 2.0, 3.0]])
    raw = path.read_bytes()
    assert HEADER.itemsize == 20
    assert raw[:8] == MAGIC
    assert int.from_bytes(raw[8:10], "little") == VERSION
    assert int.from_bytes(raw[10:12], "little") == 1
    assert int.from_bytes(raw[12:20], "little") == 3
    assert len(raw) == 20 + 6 * 8


def test_trajectory_file(tmp_path) -> None:
    run = integrate_truncated(ProblemParams(epsilon=1.0, lam=2.0), 0.0, 1.0, (0.3, 0.0))
    t, y = read_trajectory(write_trajectory(tmp_path / "run.dtraj", run, n=5))
    np.testing.assert_array_equal(t, np.linspace(0.0, 1.0, 5))
    assert y.shape == (2, 5)
    assert y[0, 0] == pytest.approx(0.3)
    assert y[0, -1] == pytest.approx(run.final())


def test_bad_magic(tmp_path) -> None:
    path = write_samples(tmp_path / "s.dtraj", [0.0], [[1.0]])
    raw = bytearray(path.read_bytes())
    raw[:8] = b"NOTTRAJ!"
    path.write_bytes(bytes(raw))
    with pytest.raises(TrajectoryFormatError, match="bad magic"):
        read_trajectory(path)


def test_unsupported_version(tmp_path) -> None:
    path = write_samples(tmp_path / "s.dtraj", [0.0], [[1.0]])
    raw = bytearray(path.read_bytes())
    raw[8:10] = (VERSION + 1).to_bytes(2, "little")
    path.write_bytes(bytes(raw))
    with pytest.raises(TrajectoryFormatError, match="unsupported version"):
        read_trajectory(path)


def test_truncated_files(tmp_path) -> None:
    path = tmp_path / "short.dtraj"
    path.write_bytes(MAGIC)
    with pytest.raises(TrajectoryFormatError, match="truncated header"):
        read_trajectory(path)

    full = write_samples(tmp_path / "s.dtraj", [0.0, 1.0], [[1.0, 2.0]])
    full.write_bytes(full.read_bytes()[:-8])
    with pytest.raises(TrajectoryFormatError, match="expected 4 values"):
        read_trajectory(full)


def test_sample_count_must_match() -> None:
    with pytest.raises(ValueError, match="times but components"):
        write_samples(None, [0.0, 1.0], [[1.0]])  # type: ignore[arg-type]
