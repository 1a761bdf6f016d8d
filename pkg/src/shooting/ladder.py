"""Extrema ladders of solutions on (0, π] and the checks made on them."""

import math

import numpy as np

from integrator import Trajectory, extrema_ladder
from schema import ExtremaLadder

END_TOL = 1e-6


def neumann_ladder(trajectory: Trajectory, lo: float = 0.0, hi: float = math.pi) -> ExtremaLadder:
    """Extrema in (lo, hi], counting hi when u′(hi) vanishes to END_TOL·max(1, 1/ε)."""
    end_tol = END_TOL * max(1.0, 1.0 / trajectory.params.epsilon)
    ladder = extrema_ladder(trajectory, lo, hi, end_tol=end_tol)
    interior = [(t, u) for t, u in zip(ladder.maxima_t, ladder.maxima_u) if t > lo + 1e-9]
    minima = [(t, u) for t, u in zip(ladder.minima_t, ladder.minima_u) if t > lo + 1e-9]
    return ExtremaLadder(
        maxima_t=[t for t, _ in interior],
        maxima_u=[u for _, u in interior],
        minima_t=[t for t, _ in minima],
        minima_u=[u for _, u in minima],
    )


def interleaved(ladder: ExtremaLadder) -> bool:
    """Maxima and minima alternate in time."""
    events = sorted([(t, 1) for t in ladder.maxima_t] + [(t, -1) for t in ladder.minima_t])
    return all(a[1] != b[1] for a, b in zip(events, events[1:]))


def monotone_on(trajectory: Trajectory, lo: float, hi: float, sign: int = 1, n: int = 2000) -> bool:
    """sign·u′ > 0 on the open interval (lo, hi), sampled on n interior points."""
    t = np.linspace(lo, hi, n + 2)[1:-1]
    return bool(np.all(sign * trajectory.du(t) > 0))
