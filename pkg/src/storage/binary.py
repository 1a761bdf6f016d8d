"""
Binary trajectory files.

Layout: the 8-byte magic DUFFTRAJ, a u16 format version, a u16 component
count, a u64 sample count, then little-endian float64 arrays: t followed by
each component.
"""

from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.errors import TrajectoryFormatError
from integrator import Trajectory

MAGIC = b"DUFFTRAJ"
VERSION = 1
HEADER = np.dtype(
    [("magic", "S8"), ("version", "<u2"), ("components", "<u2"), ("samples", "<u8")]
)


def write_samples(path: Path, t: ArrayLike, components: ArrayLike) -> Path:
    t_arr = np.asarray(t, dtype="<f8").ravel()
    y = np.atleast_2d(np.asarray(components, dtype="<f8"))
    if y.shape[1] != t_arr.size:
        raise ValueError(f"{t_arr.size} times but components of shape {y.shape}")
    header = np.array([(MAGIC, VERSION, y.shape[0], t_arr.size)], dtype=HEADER)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as f:
        f.write(header.tobytes())
        f.write(t_arr.tobytes())
        f.write(np.ascontiguousarray(y).tobytes())
    return path


def write_trajectory(path: Path, trajectory: Trajectory, n: int | None = None) -> Path:
    """(t, u, u′) on the refined step grid, or on n uniform points."""
    rows = trajectory.sample(n)
    return write_samples(path, rows[:, 0], rows[:, 1:].T)


def read_trajectory(path: Path) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    raw = path.read_bytes()
    if len(raw) < HEADER.itemsize:
        raise TrajectoryFormatError(f"{path}: truncated header")
    header = np.frombuffer(raw[: HEADER.itemsize], dtype=HEADER)[0]
    if bytes(header["magic"]) != MAGIC:
        raise TrajectoryFormatError(f"{path}: bad magic {bytes(header['magic'])!r}")
    if int(header["version"]) != VERSION:
        raise TrajectoryFormatError(f"{path}: unsupported version {int(header['version'])}")
    m, n = int(header["components"]), int(header["samples"])
    body = np.frombuffer(raw[HEADER.itemsize :], dtype="<f8")
    if body.size != (m + 1) * n:
        raise TrajectoryFormatError(f"{path}: expected {(m + 1) * n} values, found {body.size}")
    return body[:n].copy(), body[n:].reshape(m, n).copy()
