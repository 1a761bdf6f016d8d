from integrator.events import (
    BranchCurve,
    Curve,
    EventSpec,
    FunctionCurve,
    LevelCurve,
    cross_b,
    cross_curve,
    cross_level,
    crossing_times,
    derivative_zero,
    extrema_ladder,
)
from integrator.integrate import (
    Variational,
    integrate,
    integrate_batch,
    integrate_truncated,
    period_defect,
)
from integrator.trajectory import TerminalStatus, Trajectory, join_trajectories

__all__ = [
    "BranchCurve",
    "Curve",
    "EventSpec",
    "FunctionCurve",
    "LevelCurve",
    "TerminalStatus",
    "Trajectory",
    "Variational",
    "cross_b",
    "cross_curve",
    "cross_level",
    "crossing_times",
    "derivative_zero",
    "extrema_ladder",
    "integrate",
    "integrate_batch",
    "integrate_truncated",
    "join_trajectories",
    "period_defect",
]
