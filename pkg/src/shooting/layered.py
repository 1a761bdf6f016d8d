"""
Multi-layer periodic solutions: m-maxima solutions shot from t = 0 and
up-wind solutions shot from t = π/2 with u(π/2) = 0.
"""

import logging
import math

import numpy as np

from core.constants import compute_Lambda, compute_lambda0, homoclinic_anchor
from core.equilibria import EquilibriumBranches, energy_H
from core.errors import MTooLargeError, NoBracketError
from core.problem import ProblemParams
from core.settings import settings
from integrator import Trajectory, integrate_truncated
from schema import Classification, ExtremaLadder
from shooting.collocation import (
    DIRICHLET_ZERO,
    NEUMANN,
    collocate,
    m_maxima_template,
    upwind_template,
)
from shooting.functional import refine_root, reintegration_defect
from shooting.ladder import interleaved, monotone_on, neumann_ladder
from shooting.result import ShootResult

logger = logging.getLogger(__name__)

HALF = 0.5 * math.pi


def _use_collocation(params: ProblemParams, collocation: bool | None) -> bool:
    return params.epsilon < settings.COLLOCATION_EPSILON if collocation is None else collocation


def m_maxima_window(params: ProblemParams) -> tuple[float, float]:
    """(α̂, δ): α̂ = U₀(π) − δ/2 with δ = U₀(π) − V_{g(0)}(0)."""
    middle_pi = float(EquilibriumBranches(params.lam, params.forcing).middle(math.pi))
    delta = middle_pi - homoclinic_anchor(params.lam, float(params.forcing.value(0.0)))
    return middle_pi - 0.5 * delta, delta


def _m_maxima_bounds_hold(params: ProblemParams, solution: Trajectory, m: int) -> bool:
    branches = EquilibriumBranches(params.lam, params.forcing)
    middle_pi = float(branches.middle(math.pi))
    upper_pi = float(branches.upper(math.pi))
    u0, u_pi = float(solution.u(0.0)), float(solution.u(math.pi))
    lower_ok = m == 1 or -math.sqrt(params.lam) < u0
    return lower_ok and u0 < middle_pi < u_pi < upper_pi


def _m_maxima_shot(params: ProblemParams, m: int, points: int) -> tuple[float, Trajectory]:
    alpha_hat, _ = m_maxima_window(params)
    alphas = np.linspace(alpha_hat, -math.sqrt(params.lam), points)
    seen: set[int] = set()

    def G(a: float) -> float:
        return integrate_truncated(params, 0.0, math.pi, (a, 0.0)).final("du")

    prev_alpha, prev_g = None, None
    for alpha in alphas:
        traj = integrate_truncated(params, 0.0, math.pi, (alpha, 0.0))
        g = traj.final("du")
        seen.add(len(neumann_ladder(traj).maxima_t))
        if prev_g is not None and prev_g * g <= 0:
            root = refine_root(G, float(alpha), float(prev_alpha))
            candidate = integrate_truncated(params, 0.0, math.pi, (root, 0.0))
            ladder = neumann_ladder(candidate)
            count = len(ladder.maxima_t)
            seen.add(count)
            at_pi = bool(ladder.maxima_t) and abs(ladder.maxima_t[-1] - math.pi) < 1e-6
            if count == m and at_pi and _m_maxima_bounds_hold(params, candidate, m):
                return root, candidate
        prev_alpha, prev_g = alpha, g
    raise MTooLargeError(m, params.epsilon, sorted(seen))


def find_m_maxima(
    params: ProblemParams,
    m: int,
    *,
    points: int = 400,
    collocation: bool | None = None,
) -> ShootResult:
    """Periodic solution with exactly m local maxima in (0, π], the last at π."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    Lambda = compute_Lambda()
    if params.lam <= Lambda:
        raise ValueError(f"m-maxima solutions need λ > Λ = {Lambda:.6f}, got λ={params.lam}")

    if _use_collocation(params, collocation):
        solved = collocate(params, (0.0, math.pi), m_maxima_template(m))
        solution, residual, method = solved.trajectory, solved.residual, "collocation"
        alpha = float(solution.u(0.0))
        ladder = neumann_ladder(solution)
        if len(ladder.maxima_t) != m:
            raise MTooLargeError(m, params.epsilon, [len(ladder.maxima_t)])
        defect = None
    else:
        alpha, solution = _m_maxima_shot(params, m, points)
        residual, method = solution.final("du"), "ivp"
        ladder = neumann_ladder(solution)
        defect = reintegration_defect(params, alpha)

    if not ladder.is_decreasing():
        logger.warning(f"extrema ladder of the {m}-maxima solution is not decreasing: {ladder}")
    if not _m_maxima_bounds_hold(params, solution, m):
        logger.warning(f"{m}-maxima solution at ε={params.epsilon} violates its value bounds")
    logger.info(f"{m}-maxima solution at ε={params.epsilon}, λ={params.lam}: α={alpha:.12g}")
    return ShootResult(
        alpha=alpha,
        residual=residual,
        solution=solution,
        classification=Classification.M_MAXIMA,
        m=m,
        method=method,
        ladder=ladder,
        period_defect=defect,
    )


def upwind_beta_window(params: ProblemParams) -> tuple[float, float, float]:
    """
    (β_lo, β_threshold, β_hi): the scan runs from 2·β_threshold up to
    β_hi = −√H(U̲(π))/ε, with β_threshold = −λ/(√2ε) below β_hi.
    """
    lower_pi = float(EquilibriumBranches(params.lam, params.forcing).lower(math.pi))
    level = float(energy_H(lower_pi, params.lam))
    if level <= 0:
        raise NoBracketError(f"no bracket: H(U̲(π)) = {level:.6g} is not positive")
    eps = params.epsilon
    threshold = -params.lam / (math.sqrt(2.0) * eps)
    upper = -math.sqrt(level) / eps
    if upper <= threshold:
        raise NoBracketError(f"no bracket: −√H(U̲(π))/ε = {upper:.6g} is below −λ/(√2ε)")
    return 2.0 * threshold, threshold, upper


def _upwind_counts(ladder: ExtremaLadder) -> tuple[int, int]:
    return len(ladder.maxima_t), len(ladder.minima_t)


def _upwind_shot(params: ProblemParams, m: int, points: int) -> tuple[float, Trajectory]:
    lo, _, hi = upwind_beta_window(params)
    betas = np.linspace(hi, lo, points)

    def shoot(beta: float) -> Trajectory:
        return integrate_truncated(params, HALF, math.pi, (0.0, beta))

    prev_beta, prev_g = None, None
    for beta in betas:
        g = shoot(beta).final("du")
        if prev_g is not None and prev_g * g <= 0:
            root = refine_root(lambda b: shoot(b).final("du"), float(beta), float(prev_beta))
            half = shoot(root)
            ladder = neumann_ladder(half, HALF, math.pi)
            if _upwind_counts(ladder) == (m, m) and interleaved(ladder):
                return root, half
        prev_beta, prev_g = beta, g
    raise NoBracketError(
        f"no bracket: no β in [{lo:.6g}, {hi:.6g}] gives {m} maxima and minima on [π/2, π] "
        f"at ε={params.epsilon}"
    )


def _upwind_tail_holds(params: ProblemParams, half: Trajectory, ladder: ExtremaLadder) -> bool:
    branches = EquilibriumBranches(params.lam, params.forcing)
    s_m = ladder.minima_t[-1]
    t = np.linspace(s_m, math.pi, 400)[1:-1]
    u = half.u(t)
    lower_half, lower_pi = float(branches.lower(HALF)), float(branches.lower(math.pi))
    return bool(np.all((u > lower_half) & (u < lower_pi))) and monotone_on(half, s_m, math.pi)


def find_upwind(
    params: ProblemParams,
    m: int,
    *,
    points: int = 800,
    collocation: bool | None = None,
) -> ShootResult:
    """
    Up-wind solution with m minima and m maxima on [π/2, π], shot from u(π/2) = 0.

    The solution on [0, π] is the antisymmetric extension about π/2; alpha
    holds β = u′(π/2).
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    lambda0 = compute_lambda0(params.forcing)
    if params.lam <= lambda0:
        raise ValueError(f"up-wind solutions need λ > λ₀ = {lambda0:.6f}, got λ={params.lam}")

    if _use_collocation(params, collocation):
        solved = collocate(params, (HALF, math.pi), upwind_template(m), DIRICHLET_ZERO, NEUMANN)
        half, residual, method = solved.trajectory, solved.residual, "collocation"
        beta = float(half.du(HALF))
        ladder = neumann_ladder(half, HALF, math.pi)
        if _upwind_counts(ladder) != (m, m):
            raise NoBracketError(
                f"no bracket: collocation returned {_upwind_counts(ladder)} maxima/minima "
                f"instead of {m} at ε={params.epsilon}"
            )
    else:
        beta, half = _upwind_shot(params, m, points)
        residual, method = half.final("du"), "ivp"
        ladder = neumann_ladder(half, HALF, math.pi)

    if not _upwind_tail_holds(params, half, ladder):
        logger.warning(f"up-wind tail leaves (U̲(π/2), U̲(π)) at ε={params.epsilon}, m={m}")
    solution = half.antisymmetric_extension(HALF)
    logger.info(f"up-wind solution m={m} at ε={params.epsilon}: β={beta:.12g} ({method})")
    return ShootResult(
        alpha=beta,
        residual=residual,
        solution=solution,
        classification=Classification.UPWIND,
        m=m,
        method=method,
        ladder=ladder,
    )
