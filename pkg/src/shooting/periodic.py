"""
All 2π-periodic even solutions at one parameter set, classified as u₁ … u₅.

For ε ≥ COLLOCATION_EPSILON every sign change of G is bracketed by an α-scan
and refined. Below it the five solutions are computed by collocation from
their matched-structure templates.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from chaos.spikes import build_spikes
from core.constants import compute_lambda0
from core.errors import BracketFailureError, NoFiniteLambda0Error
from core.problem import ProblemParams
from core.settings import settings
from integrator import TerminalStatus, Trajectory, crossing_times, integrate, integrate_truncated
from schema import Classification, PeriodicReport
from shooting.antisymmetric import find_up
from shooting.collocation import collocate, lowest_template, spike_pi_template
from shooting.functional import reintegration_defect, zeros_of_G
from shooting.ladder import neumann_ladder
from shooting.result import ShootResult

logger = logging.getLogger(__name__)

MATCH_TOL = 1e-7
GRID = 2001
PAIRED_MIDDLE = (Classification.U2, Classification.U4)


@dataclass(frozen=True)
class PeriodicSolutions:
    params: ProblemParams
    results: list[ShootResult]
    scan_points: int = 0
    pairing_defects: dict[str, float] = field(default_factory=dict)

    def of_class(self, classification: Classification) -> list[ShootResult]:
        return [r for r in self.results if r.classification == classification]

    def report(self) -> PeriodicReport:
        return PeriodicReport(
            params=self.params,
            solutions=[r.record() for r in self.results],
            scan_points=self.scan_points,
            pairing_defects=self.pairing_defects,
        )


def in_band(solution: Trajectory, lam: float, sign: int, n: int = GRID) -> bool:
    """sign·u > √(λ/3) on [0, π]."""
    level = math.sqrt(max(lam, 0.0) / 3.0)
    t = np.linspace(0.0, math.pi, n)
    return bool(np.all(sign * solution.u(t) > level))


def reflection_defect(a: Trajectory, b: Trajectory, n: int = GRID) -> float:
    """max |a(t) + b(π − t)| on [0, π]."""
    t = np.linspace(0.0, math.pi, n)
    return float(np.max(np.abs(a.u(t) + b.u(math.pi - t))))


def _is_symmetric(params: ProblemParams) -> bool:
    return params.forcing.is_even() and params.forcing.is_half_antiperiodic()


def _w1_discriminator(params: ProblemParams):  # type: ignore[no-untyped-def]
    """Crossing test against w₁ when Condition A holds at params, else None."""
    try:
        curve = build_spikes(params, k_max=1).curve(1)
    except ValueError as exc:
        logger.debug(f"no spike family: {exc}")
        return None

    def intersects(solution: Trajectory) -> bool:
        return bool(crossing_times(solution, curve, "w1", t_range=(0.0, math.pi)))

    return intersects


def _classify(
    params: ProblemParams, roots: list[float], up: ShootResult | None
) -> list[ShootResult]:
    intersects_w1 = _w1_discriminator(params)
    results = []
    for alpha in roots:
        traj = integrate_truncated(params, 0.0, math.pi, (alpha, 0.0))
        discriminator = None
        if up is not None and abs(alpha - up.alpha) <= MATCH_TOL * max(1.0, abs(alpha)):
            classification = Classification.U3_UP
        elif in_band(traj, params.lam, -1):
            classification = Classification.U1
        elif in_band(traj, params.lam, 1):
            classification = Classification.U5
        elif intersects_w1 is not None:
            discriminator = "w1-intersection"
            classification = Classification.U2 if intersects_w1(traj) else Classification.U4
        elif up is not None:
            discriminator = "ordering"
            classification = Classification.U2 if alpha < up.alpha else Classification.U4
        else:
            classification = Classification.OTHER
        results.append(
            ShootResult(
                alpha=alpha,
                residual=traj.final("du"),
                solution=traj,
                classification=classification,
                discriminator=discriminator,
                ladder=neumann_ladder(traj),
                antisymmetry_defect=up.antisymmetry_defect
                if classification == Classification.U3_UP and up is not None
                else None,
                period_defect=reintegration_defect(params, alpha),
            )
        )
    counts = {c: sum(r.classification == c for r in results) for c in Classification}
    repeated = [str(c) for c, n in counts.items() if n > 1]
    if repeated:
        logger.warning(f"more than one solution classified as {repeated} at {params}")
    return results


def _pairing_defects(results: list[ShootResult]) -> dict[str, float]:
    by_class = {r.classification: r for r in results}
    defects = {}
    pairs = ((Classification.U5, Classification.U1), (Classification.U4, Classification.U2))
    for high, low in pairs:
        if high in by_class and low in by_class:
            key = f"{high}+{low}"
            defects[key] = reflection_defect(by_class[high].solution, by_class[low].solution)
    return defects


def _collocated(params: ProblemParams) -> list[ShootResult]:
    def make(traj: Trajectory, residual: float, classification: Classification) -> ShootResult:
        return ShootResult(
            alpha=float(traj.u(0.0)),
            residual=residual,
            solution=traj,
            classification=classification,
            method="collocation",
            discriminator="template" if classification in PAIRED_MIDDLE else None,
            ladder=neumann_ladder(traj),
        )

    u1 = collocate(params, (0.0, math.pi), lowest_template)
    results = [make(u1.trajectory, u1.residual, Classification.U1)]
    if not _is_symmetric(params):
        return results
    results.append(make(u1.trajectory.reflected(0.5 * math.pi), u1.residual, Classification.U5))
    results.append(find_up(params, collocation=True))
    try:
        above_fold = params.lam > compute_lambda0(params.forcing)
    except NoFiniteLambda0Error:
        above_fold = False
    if above_fold:
        u2 = collocate(params, (0.0, math.pi), spike_pi_template)
        results.append(make(u2.trajectory, u2.residual, Classification.U2))
        reflected = u2.trajectory.reflected(0.5 * math.pi)
        results.append(make(reflected, u2.residual, Classification.U4))
    return sorted(results, key=lambda r: r.alpha)


def find_periodic_all(
    params: ProblemParams,
    lo: float | None = None,
    hi: float | None = None,
    points: int | None = None,
    *,
    workers: int | None = None,
    seed: int | None = None,
    collocation: bool | None = None,
) -> PeriodicSolutions:
    """Every periodic solution found at params, ordered by α and classified."""
    if collocation is None:
        collocation = params.epsilon < settings.COLLOCATION_EPSILON
    if collocation:
        results = _collocated(params)
        logger.info(f"{len(results)} periodic solutions by collocation at ε={params.epsilon}")
        return PeriodicSolutions(params, results, 0, _pairing_defects(results))

    b = params.barrier
    if (lo is not None and lo > -b - 1.0) or (hi is not None and hi < b + 1.0):
        raise ValueError(f"scan range must contain [−b − 1, b + 1] = [{-b - 1.0}, {b + 1.0}]")
    scan = zeros_of_G(params, lo, hi, points, workers, seed)
    up = None
    if _is_symmetric(params):
        try:
            up = find_up(params)
        except BracketFailureError as exc:
            logger.warning(f"u_p not located: {exc}")
    results = _classify(params, scan.roots, up)
    defects = _pairing_defects(results) if _is_symmetric(params) else {}
    return PeriodicSolutions(params, results, scan.points, defects)


@dataclass(frozen=True)
class Comparison:
    precondition: bool
    ordered: bool
    min_gap: float


def comparison_check(
    params: ProblemParams, alpha1: float, alpha2: float, T: float = 0.5 * math.pi, n: int = GRID
) -> Comparison:
    """
    For α₁ < α₂ < 0 with u_{α₂} ≤ 0 on [0, T], whether u_{α₁} < u_{α₂} on [0, T].

    A run of u_{α₁} that escapes downward counts as ordered from the escape on.
    """
    if not alpha1 < alpha2 < 0:
        raise ValueError(f"need α₁ < α₂ < 0, got {alpha1}, {alpha2}")
    if not 0 < T <= 0.5 * math.pi:
        raise ValueError(f"T must lie in (0, π/2], got {T}")
    t = np.linspace(0.0, T, n)
    upper = integrate(params, 0.0, T, (alpha2, 0.0))
    if upper.terminal != TerminalStatus.REACHED_TEND:
        return Comparison(precondition=False, ordered=False, min_gap=math.nan)
    u2 = upper.u(t)
    lower = integrate(params, 0.0, T, (alpha1, 0.0))
    reach = t <= lower.span[1]
    gap = u2[reach] - lower.u(t[reach])
    escaped_down = lower.terminal == TerminalStatus.GUARD_DOWN
    ordered = bool(np.all(gap > 0)) and (bool(reach.all()) or escaped_down)
    return Comparison(
        precondition=bool(np.all(u2 <= 0)),
        ordered=ordered,
        min_gap=float(np.min(gap)) if gap.size else math.nan,
    )
