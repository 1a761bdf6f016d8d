"""
Plot data as CSV tables for external plotting tools.

Each kind knows which result types carry its data:

- equilibria: t, lower, middle, upper (missing roots left empty)
- spikes: t, w0 … w_kmax, f+, f-, g+, g-
- solutions: t and one u column per solution
- g-curve: alpha, G
- diagram: lambda, alpha, G_slope, v_prime_pi
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np
from numpy.typing import NDArray

from chaos import Solved, SpikeFamily
from core.equilibria import EquilibriumBranches
from core.errors import KindMismatchError
from integrator import Trajectory
from schema import BifurcationDiagram
from shooting import GCurve, PeriodicSolutions, ShootResult
from storage.tables import Table

SAMPLES_PER_PI = 400


class PlotKind(StrEnum):
    EQUILIBRIA = "equilibria"
    SPIKES = "spikes"
    SOLUTIONS = "solutions"
    G_CURVE = "g-curve"
    DIAGRAM = "diagram"


def _grid(lo: float, hi: float) -> NDArray[np.float64]:
    n = max(2, int(math.ceil((hi - lo) / math.pi * SAMPLES_PER_PI)) + 1)
    return np.linspace(lo, hi, n)


def _equilibria(result: EquilibriumBranches, t: NDArray[np.float64] | None) -> Table:
    t = _grid(0.0, 2.0 * math.pi) if t is None else t
    table = result.table(t)
    return Table.from_columns(
        {"t": t, "lower": table[:, 0], "middle": table[:, 1], "upper": table[:, 2]}
    )


def _spikes(result: SpikeFamily | Solved, t: NDArray[np.float64] | None) -> Table:
    family = result.spikes if isinstance(result, Solved) else result
    t = _grid(-math.pi, (family.k_max + 1) * math.pi) if t is None else t
    return Table.from_columns({"t": t, **family.sample(t)})


def _on(trajectory: Trajectory, t: NDArray[np.float64]) -> NDArray[np.float64]:
    lo, hi = trajectory.span
    inside = (t >= lo) & (t <= hi)
    return np.where(inside, trajectory.u(np.clip(t, lo, hi)), np.nan)


def _solutions(
    result: PeriodicSolutions | ShootResult | Solved, t: NDArray[np.float64] | None
) -> Table:
    if isinstance(result, Solved):
        named = [("u", result.orbit)]
    elif isinstance(result, ShootResult):
        named = [(str(result.classification), result.solution)]
    else:
        named = [(str(r.classification), r.solution) for r in result.results]
    if t is None:
        lo = min(traj.span[0] for _, traj in named) if named else 0.0
        hi = max(traj.span[1] for _, traj in named) if named else math.pi
        t = _grid(lo, hi)
    columns: dict[str, Any] = {"t": t}
    for name, traj in named:
        key, i = name, 1
        while key in columns:
            key, i = f"{name}_{i}", i + 1
        columns[key] = _on(traj, t)
    return Table.from_columns(columns)


def _g_curve(result: GCurve, t: NDArray[np.float64] | None) -> Table:
    return Table.from_columns({"alpha": result.alphas, "G": result.values})


def _diagram(result: BifurcationDiagram, t: NDArray[np.float64] | None) -> Table:
    rows = [(s.lam, z.alpha, z.g_slope, z.v_prime_pi) for s in result.slices for z in s.zeros]
    return Table.from_rows(("lambda", "alpha", "G_slope", "v_prime_pi"), rows)


@dataclass(frozen=True)
class PlotSpec:
    accepts: tuple[type, ...]
    build: Callable[[Any, NDArray[np.float64] | None], Table]


PLOTS: dict[PlotKind, PlotSpec] = {
    PlotKind.EQUILIBRIA: PlotSpec((EquilibriumBranches,), _equilibria),
    PlotKind.SPIKES: PlotSpec((SpikeFamily, Solved), _spikes),
    PlotKind.SOLUTIONS: PlotSpec((PeriodicSolutions, ShootResult, Solved), _solutions),
    PlotKind.G_CURVE: PlotSpec((GCurve,), _g_curve),
    PlotKind.DIAGRAM: PlotSpec((BifurcationDiagram,), _diagram),
}


def emit_plot_data(
    result: object, kind: PlotKind | str, t: NDArray[np.float64] | None = None
) -> Table:
    """The plot table of the given kind, sampled on t where the kind is a function of time."""
    kind = PlotKind(kind)
    spec = PLOTS[kind]
    if not isinstance(result, spec.accepts):
        raise KindMismatchError(str(kind), type(result).__name__)
    return spec.build(result, None if t is None else np.asarray(t, dtype=float))
