"""
Condition A: the solution from (ᾱ, 0) increases and crosses u = b before π/2.

Two ways to decide it: the closed-form bound ε ≤ ε_λ, a sufficient condition,
and a direct integration of the untruncated equation from (−√λ, 0).
"""

import logging
import math

from core.constants import compute_lambda0
from core.errors import LambdaBelowLambda0Error
from core.problem import ProblemParams
from integrator import cross_b, derivative_zero, integrate
from schema import CertificateMethod, ConditionACertificate, EpsilonLambda

logger = logging.getLogger(__name__)

BRANCH_SWITCH = 4.0


def closed_form_barrier(lam: float) -> float:
    """b(λ) = √(λ + 1/(2λ))."""
    return math.sqrt(lam + 1.0 / (2.0 * lam))


def time_bound_below_4(lam: float) -> float:
    return 2.0 * math.sqrt(closed_form_barrier(lam) + math.sqrt(lam))


def time_bound_from_4(lam: float) -> float:
    root = math.sqrt(lam)
    b = closed_form_barrier(lam)
    return (
        2.0 * math.sqrt(2.0)
        + math.sqrt(2.0) * math.log(root - 1.0) / root
        + 2.0 * (math.sqrt(b + root) - math.sqrt(2.0 * root - 2.0))
    )


def epsilon_lambda(lam: float) -> EpsilonLambda:
    """ε_λ = π/(3T_λ), with T_λ from the closed form for λ < 4 or λ ≥ 4."""
    lambda0 = compute_lambda0()
    if lam < lambda0:
        raise LambdaBelowLambda0Error(lam, lambda0)
    if lam < BRANCH_SWITCH:
        T, branch = time_bound_below_4(lam), "below-4"
    else:
        T, branch = time_bound_from_4(lam), "from-4"
    return EpsilonLambda(
        lam=lam,
        b=closed_form_barrier(lam),
        T_lambda=T,
        eps_lambda=math.pi / (3.0 * T),
        branch=branch,
    )


def junction_defect() -> float:
    """|T_λ(below-4) − T_λ(from-4)| at λ = 4."""
    return abs(time_bound_below_4(BRANCH_SWITCH) - time_bound_from_4(BRANCH_SWITCH))


def _direct(params: ProblemParams, alpha_bar: float, b: float) -> ConditionACertificate:
    half = 0.5 * math.pi
    traj = integrate(
        params.evolve(truncate=False),
        0.0,
        half,
        (alpha_bar, 0.0),
        events=[cross_b(b, 1, terminal=True), derivative_zero(-1, terminal=True, label="turn")],
    )
    crossing = traj.first_event("b+")
    holds = crossing is not None and traj.stop_label == "b+" and crossing.t < half
    logger.debug(f"Condition A (direct) at ε={params.epsilon}, λ={params.lam}: {holds}")
    return ConditionACertificate(
        lam=params.lam,
        epsilon=params.epsilon,
        method=CertificateMethod.DIRECT,
        alpha_bar=alpha_bar,
        b=b,
        crossing_time=crossing.t if crossing is not None else None,
        holds=holds,
    )


def certify_condition_A(
    params: ProblemParams,
    method: CertificateMethod | None = None,
    alpha_bar: float | None = None,
    barrier: float | None = None,
) -> ConditionACertificate:
    """
    Check Condition A at params, starting from ᾱ = −√λ unless alpha_bar is given.

    Both methods test the crossing of b(λ) = √(λ + 1/(2λ)), the level the closed
    form bounds, so a closed-form pass implies a direct pass. The direct method
    takes another level through barrier; the spike family uses params.barrier.

    holds=False is an outcome, not an error. The closed-form path raises
    LambdaBelowLambda0Error below λ₀, where ε_λ is undefined.
    """
    method = method or CertificateMethod.DIRECT
    if alpha_bar is None:
        if params.lam <= 0:
            raise LambdaBelowLambda0Error(params.lam, compute_lambda0(params.forcing))
        alpha_bar = -math.sqrt(params.lam)
    if method == CertificateMethod.DIRECT:
        if barrier is None:
            if params.lam <= 0:
                raise LambdaBelowLambda0Error(params.lam, compute_lambda0(params.forcing))
            barrier = closed_form_barrier(params.lam)
        return _direct(params, alpha_bar, barrier)
    bound = epsilon_lambda(params.lam)
    return ConditionACertificate(
        lam=params.lam,
        epsilon=params.epsilon,
        method=CertificateMethod.CLOSED_FORM,
        alpha_bar=alpha_bar,
        b=bound.b,
        bound=bound.eps_lambda,
        holds=params.epsilon <= bound.eps_lambda,
    )
