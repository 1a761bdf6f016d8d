"""
Chains of one-parameter charts of initial states.

A chart at time t_c is the segment X(s) = X_lo + s(X_hi − X_lo), s ∈ [0, 1].
The root chart is the α-segment (−b, ᾱ) at t = 0. A child chart is made from
two states of its parent whose orbits stay within CHART_SPAN of each other up
to the child's t_c. s stays an exact dyadic fraction and the α of a point is
composed exactly through the chain, so brackets remain ordered long after
their width drops below double precision.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from core.problem import ProblemParams
from core.settings import settings
from integrator import Trajectory, cross_b, integrate, join_trajectories

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Chart:
    index: int
    t: float
    lo_state: tuple[float, float]
    hi_state: tuple[float, float]
    alpha_lo: Fraction
    alpha_hi: Fraction
    history: Trajectory | None = None

    def alpha(self, s: Fraction) -> Fraction:
        return self.alpha_lo + s * (self.alpha_hi - self.alpha_lo)

    def state(self, s: Fraction) -> tuple[float, float]:
        f = float(s)
        return (
            self.lo_state[0] + f * (self.hi_state[0] - self.lo_state[0]),
            self.lo_state[1] + f * (self.hi_state[1] - self.lo_state[1]),
        )

    def orbit(self, params: ProblemParams, b: float, s: Fraction, horizon: float) -> Trajectory:
        """The chart point integrated to the horizon or to |u| = b, preceded by the history."""
        segment = integrate(
            params,
            self.t,
            horizon,
            self.state(s),
            events=[cross_b(b, 1, terminal=True), cross_b(b, -1, terminal=True)],
        )
        return segment if self.history is None else join_trajectories([self.history, segment])


def root_chart(b: float, alpha_bar: float) -> Chart:
    return Chart(
        index=0,
        t=0.0,
        lo_state=(-b, 0.0),
        hi_state=(alpha_bar, 0.0),
        alpha_lo=Fraction(-b),
        alpha_hi=Fraction(alpha_bar),
    )


def spread(
    params: ProblemParams, a: Trajectory, b: Trajectory, lo: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(t, |Δu| + ε|Δu′|) on the merged step grids of a and b after lo."""
    hi = min(a.span[1], b.span[1])
    grid = np.union1d(a.grid(4), b.grid(4))
    t = grid[(grid > lo) & (grid < hi)]
    if t.size == 0:
        return t, t
    ya, yb = a.dense(t), b.dense(t)
    return t, np.abs(ya[0] - yb[0]) + params.epsilon * np.abs(ya[1] - yb[1])


def reanchor(
    params: ProblemParams,
    chart: Chart,
    lo: Fraction,
    hi: Fraction,
    lo_orbit: Trajectory,
    hi_orbit: Trajectory,
    span: float | None = None,
) -> Chart | None:
    """
    The child chart spanned by the states of the lo and hi orbits at the
    latest time they are still within span of each other, or None when that
    time does not advance past the chart's own t.
    """
    span = settings.CHART_SPAN if span is None else span
    t, gap = spread(params, lo_orbit, hi_orbit, chart.t)
    if t.size == 0:
        return None
    apart = np.flatnonzero(gap > span)
    if apart.size == 0:
        t_c = float(t[-1])
    elif apart[0] == 0:
        return None
    else:
        t_c = float(t[apart[0] - 1])
    if t_c <= chart.t + 1e-9:
        return None
    lo_state = tuple(float(x) for x in lo_orbit.dense(t_c)[:2])
    hi_state = tuple(float(x) for x in hi_orbit.dense(t_c)[:2])
    child = Chart(
        index=chart.index + 1,
        t=t_c,
        lo_state=lo_state,  # type: ignore[arg-type]
        hi_state=hi_state,  # type: ignore[arg-type]
        alpha_lo=chart.alpha(lo),
        alpha_hi=chart.alpha(hi),
        history=lo_orbit.restricted(lo_orbit.span[0], t_c),
    )
    logger.debug(f"chart {child.index} anchored at t={t_c:.6g}")
    return child
