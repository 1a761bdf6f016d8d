"""
The antisymmetric periodic solution u_p: u(π/2) = 0, u(π − t) = −u(t), u′ > 0 on (0, π).

Shooting covers only [0, π/2]; the solution on [0, π] is the antisymmetric
extension. Below COLLOCATION_EPSILON the half problem u′(0) = 0, u(π/2) = 0 is
solved by collocation instead.
"""

import logging
import math

import numpy as np

from core.constants import compute_lambda0
from core.equilibria import EquilibriumBranches
from core.errors import BracketFailureError, NoFiniteLambda0Error
from core.problem import ProblemParams
from core.settings import settings
from integrator import Trajectory, cross_level, integrate_truncated
from schema import Classification
from shooting.collocation import (
    DIRICHLET_ZERO,
    NEUMANN,
    GuessFn,
    collocate,
    layer_rate_guess,
    up_half_template,
)
from shooting.functional import refine_root, reintegration_defect
from shooting.ladder import monotone_on, neumann_ladder
from shooting.result import ShootResult

logger = logging.getLogger(__name__)

HALF = 0.5 * math.pi
DEFAULT_POINTS = 200


def _crossing_time(params: ProblemParams, alpha: float) -> float:
    """First upward zero of u_α in (0, π/2], or inf."""
    traj = integrate_truncated(
        params, 0.0, HALF, (alpha, 0.0), events=[cross_level(0.0, "zero", 1, terminal=True)]
    )
    hit = traj.first_event("zero")
    return hit.t if hit is not None else math.inf


def _half_value(params: ProblemParams, alpha: float) -> float:
    return integrate_truncated(params, 0.0, HALF, (alpha, 0.0)).final("u")


def antisymmetry_defect(trajectory: Trajectory, n: int = 400) -> float:
    s = np.linspace(0.0, HALF, n)
    return float(np.max(np.abs(trajectory.u(HALF + s) + trajectory.u(HALF - s))))


def _shoot_half(params: ProblemParams, points: int) -> float:
    """Largest α < 0 whose first upward zero sits at π/2."""
    alpha0 = float(EquilibriumBranches(params.lam, params.forcing).lowest(0.0))
    alphas = alpha0 * np.arange(1, points + 1) / points
    alphas[-1] = alpha0 * (1.0 - 1e-9)
    above = None
    for alpha in alphas:
        if _crossing_time(params, alpha) > HALF:
            break
        above = alpha
    else:
        raise BracketFailureError(
            f"bracket failure: u_α crosses zero before π/2 for every α in ({alpha0}, 0) "
            f"at ε={params.epsilon}, λ={params.lam}"
        )
    if above is None:
        raise BracketFailureError(
            f"bracket failure: t₀(α) > π/2 already at α={alphas[0]:.6g} "
            f"(α₀={alpha0:.6g}, ε={params.epsilon}, λ={params.lam})"
        )
    below = float(alpha)
    logger.debug(f"u_p bracket [{below:.10g}, {above:.10g}]")
    f_lo, f_hi = _half_value(params, below), _half_value(params, above)
    if f_lo < 0 < f_hi:
        return refine_root(lambda a: _half_value(params, a), below, above, f_lo, f_hi)

    lo, hi = below, float(above)
    while hi - lo > 1e-15 * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if _crossing_time(params, mid) > HALF:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _full_guess(params: ProblemParams) -> tuple[GuessFn, list[float]]:
    branches = EquilibriumBranches(params.lam, params.forcing)
    k = layer_rate_guess(params.lam)

    def guess(t: np.ndarray) -> np.ndarray:
        return branches.lowest(np.minimum(t, math.pi - t)) * np.tanh(
            k * (HALF - t) / params.epsilon
        )

    return guess, [HALF]


def _check_monotone(params: ProblemParams, solution: Trajectory) -> None:
    try:
        lambda0 = compute_lambda0(params.forcing)
    except NoFiniteLambda0Error:
        return
    if params.lam > lambda0 and not monotone_on(solution, 0.0, math.pi):
        logger.warning(f"u_p is not increasing on (0, π) at ε={params.epsilon}, λ={params.lam}")


def find_up(
    params: ProblemParams, *, points: int = DEFAULT_POINTS, collocation: bool | None = None
) -> ShootResult:
    """u_p on [0, π], by half-interval shooting or, for small ε, by collocation."""
    if collocation is None:
        collocation = params.epsilon < settings.COLLOCATION_EPSILON

    if collocation:
        half = collocate(params, (0.0, HALF), up_half_template, NEUMANN, DIRICHLET_ZERO)
        solution = half.trajectory.antisymmetric_extension(HALF)
        full = collocate(params, (0.0, math.pi), _full_guess)
        alpha = float(solution.u(0.0))
        result = ShootResult(
            alpha=alpha,
            residual=half.residual,
            solution=solution,
            classification=Classification.U3_UP,
            method="collocation",
            ladder=neumann_ladder(solution),
            antisymmetry_defect=antisymmetry_defect(full.trajectory),
        )
    else:
        alpha = _shoot_half(params, points)
        half_traj = integrate_truncated(params, 0.0, HALF, (alpha, 0.0))
        solution = half_traj.antisymmetric_extension(HALF)
        full_traj = integrate_truncated(params, 0.0, math.pi, (alpha, 0.0))
        result = ShootResult(
            alpha=alpha,
            residual=half_traj.final("u"),
            solution=solution,
            classification=Classification.U3_UP,
            ladder=neumann_ladder(solution),
            antisymmetry_defect=antisymmetry_defect(full_traj),
            period_defect=reintegration_defect(params, alpha),
        )
    _check_monotone(params, result.solution)
    logger.info(
        f"u_p at ε={params.epsilon}, λ={params.lam}: α_p={result.alpha:.12g} ({result.method})"
    )
    return result
