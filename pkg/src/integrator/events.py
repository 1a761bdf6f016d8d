"""
Event specifications, event curves and post-hoc crossing audits.

Event functions take (t, u, u′) in original time units; the integrator adapts
them to the rescaled variables when it integrates in τ = t/ε.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import brentq

from core.equilibria import EquilibriumBranches
from core.settings import settings
from integrator.trajectory import Trajectory
from schema import EventKind, EventRecord, ExtremaLadder


class Curve(Protocol):
    """A graph t ↦ value(t) with slope(t), defined on domain and extended outside it."""

    domain: tuple[float, float]

    def value(self, t: ArrayLike) -> NDArray[np.float64]: ...

    def slope(self, t: ArrayLike) -> NDArray[np.float64]: ...


@dataclass(frozen=True)
class LevelCurve:
    level: float
    domain: tuple[float, float] = (-math.inf, math.inf)

    def value(self, t: ArrayLike) -> NDArray[np.float64]:
        return np.full(np.shape(t), self.level)

    def slope(self, t: ArrayLike) -> NDArray[np.float64]:
        return np.zeros(np.shape(t))


@dataclass(frozen=True)
class BranchCurve:
    """One equilibrium branch (lower, middle or upper) as an event curve."""

    branches: EquilibriumBranches
    which: str
    domain: tuple[float, float] = (-math.inf, math.inf)

    def value(self, t: ArrayLike) -> NDArray[np.float64]:
        return getattr(self.branches, self.which)(t)

    def slope(self, t: ArrayLike) -> NDArray[np.float64]:
        return self.branches.slope(self.value(t), t)


@dataclass(frozen=True)
class FunctionCurve:
    value_fn: Callable[[ArrayLike], NDArray[np.float64]]
    slope_fn: Callable[[ArrayLike], NDArray[np.float64]]
    domain: tuple[float, float] = (-math.inf, math.inf)

    def value(self, t: ArrayLike) -> NDArray[np.float64]:
        return self.value_fn(t)

    def slope(self, t: ArrayLike) -> NDArray[np.float64]:
        return self.slope_fn(t)


EventFunction = Callable[[float, float, float], float]


@dataclass(frozen=True)
class EventSpec:
    kind: EventKind
    label: str
    fn: EventFunction
    slope: Callable[[float], float]
    terminal: bool = False
    direction: int = 0


def cross_level(
    level: float, label: str | None = None, direction: int = 0, terminal: bool = False
) -> EventSpec:
    return EventSpec(
        EventKind.CROSS_LEVEL,
        label or f"u={level:g}",
        lambda t, u, du: u - level,
        lambda t: 0.0,
        terminal,
        direction,
    )


def cross_b(b: float, sign: int = 1, terminal: bool = False) -> EventSpec:
    """Crossing of u = sign·b in the outward direction."""
    level = sign * b
    return EventSpec(
        EventKind.CROSS_B,
        "b+" if sign > 0 else "b-",
        lambda t, u, du: u - level,
        lambda t: 0.0,
        terminal,
        sign,
    )


def derivative_zero(direction: int = 0, terminal: bool = False, label: str = "du=0") -> EventSpec:
    """u′ = 0; direction −1 selects maxima of u, +1 minima."""
    return EventSpec(
        EventKind.DERIVATIVE_ZERO, label, lambda t, u, du: du, lambda t: 0.0, terminal, direction
    )


def cross_curve(
    curve: Curve, label: str, direction: int = 0, terminal: bool = False
) -> EventSpec:
    return EventSpec(
        EventKind.CROSS_CURVE,
        label,
        lambda t, u, du: u - float(curve.value(t)),
        lambda t: float(curve.slope(t)),
        terminal,
        direction,
    )


def guard(level: float, sign: int) -> EventSpec:
    bound = sign * level
    return EventSpec(
        EventKind.GUARD,
        "guard+" if sign > 0 else "guard-",
        lambda t, u, du: u - bound,
        lambda t: 0.0,
        True,
        sign,
    )


def crossing_times(
    trajectory: Trajectory,
    curve: Curve,
    label: str = "curve",
    component: str = "u",
    t_range: tuple[float, float] | None = None,
    refine: int = 16,
) -> list[EventRecord]:
    """
    All sign changes of component − curve on the trajectory, ordered in t.

    Roots are bracketed on the step grid subdivided refine times and polished
    with brentq. A crossing is flagged tangential when the slope difference at
    the root is below TANGENCY_TOL.
    """
    idx = trajectory.components.index(component)
    grid = trajectory.grid(refine)
    lo, hi = t_range or trajectory.span
    lo, hi = max(lo, curve.domain[0], grid[0]), min(hi, curve.domain[1], grid[-1])
    if not hi > lo:
        return []
    grid = np.unique(np.concatenate([[lo], grid[(grid > lo) & (grid < hi)], [hi]]))

    def diff(t: ArrayLike) -> NDArray[np.float64]:
        return trajectory.dense(t)[idx] - curve.value(t)

    sign = np.sign(diff(grid))
    roots: list[tuple[float, int]] = []
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
        root = brentq(lambda s: float(diff(s)), grid[i], grid[i + 1], xtol=1e-13)
        roots.append((float(root), int(sign[i + 1])))
    for i in np.flatnonzero(sign[1:-1] == 0) + 1:
        if sign[i - 1] * sign[i + 1] < 0:
            roots.append((float(grid[i]), int(sign[i + 1])))

    found: list[EventRecord] = []
    for root, direction in sorted(roots):
        state = trajectory.dense(root)
        if component == "u":
            rate = float(state[1] - curve.slope(root))
        else:
            rate = float(trajectory.params.acceleration(root, state[0]) - curve.slope(root))
        found.append(
            EventRecord(
                kind=EventKind.CROSS_CURVE if component == "u" else EventKind.DERIVATIVE_ZERO,
                label=label,
                t=root,
                u=float(state[0]),
                du=float(state[1]),
                direction=direction,
                tangential=abs(rate) < settings.TANGENCY_TOL,
            )
        )
    return found


def extrema_ladder(
    trajectory: Trajectory,
    lo: float | None = None,
    hi: float | None = None,
    end_tol: float | None = None,
) -> ExtremaLadder:
    """
    Local maxima and minima of u from the sign changes of u′ in [lo, hi].

    With end_tol, hi itself counts as an extremum when |u′(hi)| ≤ end_tol (a
    Neumann end point), classified by the sign of u″(hi).
    """
    span = trajectory.span
    lo = span[0] if lo is None else lo
    hi = span[1] if hi is None else hi
    ladder = ExtremaLadder()
    for e in crossing_times(trajectory, LevelCurve(0.0), "du=0", component="du", t_range=(lo, hi)):
        if e.direction < 0:
            ladder.maxima_t.append(e.t)
            ladder.maxima_u.append(e.u)
        elif e.direction > 0:
            ladder.minima_t.append(e.t)
            ladder.minima_u.append(e.u)
    if end_tol is not None:
        u_end, du_end = trajectory.dense(hi)[:2]
        seen = ladder.maxima_t + ladder.minima_t
        if abs(du_end) <= end_tol and all(abs(t - hi) > 1e-9 for t in seen):
            if trajectory.params.acceleration(hi, u_end) < 0:
                ladder.maxima_t.append(float(hi))
                ladder.maxima_u.append(float(u_end))
            else:
                ladder.minima_t.append(float(hi))
                ladder.minima_u.append(float(u_end))
    return ladder
