from collections.abc import Callable, Sequence
from dataclasses import dataclass, field, replace
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.problem import ProblemParams
from schema import EventRecord

Dense = Callable[[ArrayLike], NDArray[np.float64]]


class TerminalStatus(StrEnum):
    REACHED_TEND = "reached-tend"
    GUARD_UP = "guard+"
    GUARD_DOWN = "guard-"
    EVENT_STOP = "event-stop"


class ScaledDense:
    """Dense output of a run in τ = t/scale with derivative components stored as scale·x′."""

    def __init__(self, sol: Dense, scale: float) -> None:
        self.sol = sol
        self.scale = scale

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        y = np.array(self.sol(np.asarray(t, dtype=float) / self.scale), dtype=float)
        if self.scale != 1.0:
            y[1::2] /= self.scale
        return y


class AffineDense:
    """t ↦ sign·x(a + b·t) for value components, with the matching chain rule on derivatives."""

    def __init__(self, base: Dense, a: float, b: float, sign: float) -> None:
        self.base, self.a, self.b, self.sign = base, a, b, sign

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        y = np.array(self.base(self.a + self.b * np.asarray(t, dtype=float)), dtype=float)
        y[0::2] *= self.sign
        y[1::2] *= self.sign * self.b
        return y


class PiecewiseDense:
    def __init__(self, breaks: Sequence[float], pieces: Sequence[Dense]) -> None:
        self.breaks = np.asarray(breaks, dtype=float)
        self.pieces = list(pieces)
        self.increasing = self.breaks[-1] >= self.breaks[0]

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        key = t_arr if self.increasing else -t_arr
        edges = self.breaks[1:-1] if self.increasing else -self.breaks[1:-1]
        which = np.searchsorted(edges, key, side="right")
        out: NDArray[np.float64] | None = None
        for i, piece in enumerate(self.pieces):
            mask = which == i
            if not mask.any():
                continue
            y = piece(t_arr[mask])
            if out is None:
                out = np.empty((y.shape[0], t_arr.size))
            out[:, mask] = y
        assert out is not None
        return out if np.ndim(t) else out[:, 0]


@dataclass(frozen=True)
class Trajectory:
    """Dense solution record of one integration, immutable once returned."""

    params: ProblemParams
    t0: float
    t: NDArray[np.float64]
    y: NDArray[np.float64]
    events: tuple[EventRecord, ...]
    terminal: TerminalStatus
    dense: Dense = field(repr=False, compare=False)
    components: tuple[str, ...] = ("u", "du")
    stop_label: str | None = None

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    @property
    def span(self) -> tuple[float, float]:
        lo, hi = float(self.t[0]), float(self.t[-1])
        return (lo, hi) if lo <= hi else (hi, lo)

    @property
    def forward(self) -> bool:
        return bool(self.t[-1] >= self.t[0])

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        return self.dense(t)

    def component(self, name: str, t: ArrayLike) -> NDArray[np.float64]:
        return self.dense(t)[self.components.index(name)]

    def u(self, t: ArrayLike) -> NDArray[np.float64]:
        return self.dense(t)[0]

    def du(self, t: ArrayLike) -> NDArray[np.float64]:
        return self.dense(t)[1]

    def final(self, name: str = "u") -> float:
        return float(self.y[self.components.index(name), -1])

    def grid(self, refine: int = 16) -> NDArray[np.float64]:
        """Accepted step times subdivided refine times, ordered in t."""
        steps = np.sort(self.t)
        if steps.size < 2:
            return steps
        frac = np.linspace(0.0, 1.0, refine, endpoint=False)
        inner = steps[:-1, None] + np.diff(steps)[:, None] * frac[None, :]
        return np.concatenate([inner.ravel(), steps[-1:]])

    def sample(self, n: int | None = None, refine: int = 16) -> NDArray[np.float64]:
        """(t, u, u′) rows, on the refined step grid or n uniform points."""
        lo, hi = self.span
        t = self.grid(refine) if n is None else np.linspace(lo, hi, n)
        y = self.dense(t)
        return np.column_stack([t, y[0], y[1]])

    def events_labelled(self, label: str) -> list[EventRecord]:
        return [e for e in self.events if e.label == label]

    def first_event(self, label: str) -> EventRecord | None:
        hits = self.events_labelled(label)
        return hits[0] if hits else None

    def restricted(self, lo: float, hi: float) -> "Trajectory":
        """The same solution over [lo, hi] ∩ span; the dense output is shared."""
        order = 1 if self.forward else -1
        lo, hi = max(lo, self.span[0]), min(hi, self.span[1])
        keep = (self.t > lo) & (self.t < hi)
        ends = [lo, hi] if self.forward else [hi, lo]
        t = np.concatenate([[ends[0]], self.t[keep], [ends[1]]])
        y = self.dense(t)
        events = tuple(e for e in self.events if lo <= e.t <= hi)
        reaches_end = order * (ends[1] - self.t[-1]) >= 0
        terminal = self.terminal if reaches_end else TerminalStatus.REACHED_TEND
        stop = self.stop_label if terminal == self.terminal else None
        return replace(
            self, t0=float(t[0]), t=t, y=y, events=events, terminal=terminal, stop_label=stop
        )

    def reflected(self, center: float, sign: float = -1.0) -> "Trajectory":
        """The solution sign·u(2c − t), defined over the mirror image of the span."""
        dense = AffineDense(self.dense, 2.0 * center, -1.0, sign)
        t = 2.0 * center - self.t[::-1]
        y = dense(t)
        events = tuple(
            e.model_copy(
                update={
                    "t": 2.0 * center - e.t,
                    "u": sign * e.u,
                    "du": -sign * e.du,
                    "direction": int(-sign * e.direction),
                }
            )
            for e in reversed(self.events)
        )
        return replace(self, t0=float(t[0]), t=t, y=y, events=events, dense=dense)

    def shifted(self, shift: float, sign: float = 1.0) -> "Trajectory":
        """The solution sign·u(t − shift)."""
        dense = AffineDense(self.dense, -shift, 1.0, sign)
        t = self.t + shift
        events = tuple(
            e.model_copy(
                update={
                    "t": e.t + shift,
                    "u": sign * e.u,
                    "du": sign * e.du,
                    "direction": int(e.direction * sign),
                }
            )
            for e in self.events
        )
        return replace(self, t0=self.t0 + shift, t=t, y=sign * self.y, events=events, dense=dense)

    def join(self, other: "Trajectory") -> "Trajectory":
        """Concatenate a segment that starts where this one ends."""
        return join_trajectories([self, other])

    def antisymmetric_extension(self, center: float) -> "Trajectory":
        """Extend a solution on one side of center by u(2c − t) = −u(t)."""
        mirror = self.reflected(center, sign=-1.0)
        return join_trajectories(sorted([self, mirror], key=lambda p: p.span[0]))

    def even_extension(self, center: float) -> "Trajectory":
        """Extend by u(2c − t) = u(t), e.g. a Neumann solution on [0, π] to one period."""
        mirror = self.reflected(center, sign=1.0)
        return join_trajectories(sorted([self, mirror], key=lambda p: p.span[0]))


def join_trajectories(parts: Sequence[Trajectory]) -> Trajectory:
    """Concatenate forward segments ordered in t; later segments own their start point."""
    parts = [p if p.forward else _as_forward(p) for p in parts]
    breaks = [float(parts[0].t[0])] + [float(p.t[0]) for p in parts[1:]] + [float(parts[-1].t[-1])]
    t = np.concatenate([parts[0].t] + [p.t[1:] for p in parts[1:]])
    y = np.concatenate([parts[0].y] + [p.y[:, 1:] for p in parts[1:]], axis=1)
    events = tuple(e for p in parts for e in p.events)
    dense = PiecewiseDense(breaks, [p.dense for p in parts])
    last = parts[-1]
    return Trajectory(
        params=parts[0].params,
        t0=float(t[0]),
        t=t,
        y=y,
        events=events,
        terminal=last.terminal,
        dense=dense,
        components=parts[0].components,
        stop_label=last.stop_label,
    )


def _as_forward(p: Trajectory) -> Trajectory:
    return replace(p, t=p.t[::-1].copy(), y=p.y[:, ::-1].copy(), events=tuple(reversed(p.events)))
