"""
Linearised checks along solutions: v = ∂u/∂α for the pitchfork exclusion at
u_p, and h = ∂u/∂λ for the direction of a fold.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import root

from bifurcation.sweep import fd_slope
from core.errors import NotAFoldError
from core.problem import ProblemParams
from integrator import Variational, integrate_truncated
from schema import FoldReport, PitchforkReport
from shooting import find_up
from shooting.functional import G, G_with_slope

logger = logging.getLogger(__name__)

FOLD_THRESHOLD = 1e-6
LAMBDA_DELTA = 1e-5
ISOLATION_RADIUS = 1e-3
GRID = 2001


def isolation_scan(
    params: ProblemParams, alpha: float, radius: float = ISOLATION_RADIUS, points: int = 41
) -> bool:
    """G changes sign exactly once on [α − radius, α + radius]."""
    alphas = np.linspace(alpha - radius, alpha + radius, points)
    values = np.array([G(a, params) for a in alphas])
    return int(np.count_nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)) == 1


def pitchfork_exclusion(params: ProblemParams, alpha_p: float | None = None) -> PitchforkReport:
    """
    v along u_p: min v on [0, π], v(π) and v′(π). A fold through u_p would need
    v′(π) = G′(α_p) = 0, so v′(π) > 0 excludes a pitchfork there.
    """
    params = params.truncated()
    if alpha_p is None:
        alpha_p = find_up(params.evolve(truncate=False)).alpha
    traj = integrate_truncated(
        params, 0.0, math.pi, (alpha_p, 0.0), variational=[Variational.ALPHA]
    )
    t = np.linspace(0.0, math.pi, GRID)
    v = traj.component("v", t)
    v_prime_pi = traj.final("dv")
    slope = fd_slope(params, alpha_p)
    relative = abs(slope - v_prime_pi) / max(abs(v_prime_pi), 1e-300)
    if relative > 1e-3:
        logger.warning(f"finite-difference G′ disagrees with v′(π) by {relative:.2e}")
    excluded = v_prime_pi > 0
    if not excluded:
        logger.warning(f"v′(π) = {v_prime_pi:.6g} ≤ 0 at ε={params.epsilon}, λ={params.lam}")
    return PitchforkReport(
        lam=params.lam,
        epsilon=params.epsilon,
        alpha_p=alpha_p,
        v_min=float(np.min(v)),
        v_pi=traj.final("v"),
        v_prime_pi=v_prime_pi,
        fd_slope=slope,
        fd_relative_error=relative,
        excluded=excluded,
        isolated=isolation_scan(params, alpha_p),
    )


@dataclass(frozen=True)
class FoldPoint:
    alpha: float
    lam: float
    g: float
    g_slope: float


def locate_fold(params: ProblemParams, alpha: float, lam: float) -> FoldPoint:
    """Solve G = 0, G′ = 0 for (α, λ) from the guess (alpha, lam)."""
    params = params.truncated()

    def system(x: np.ndarray) -> list[float]:
        return list(G_with_slope(float(x[0]), params.evolve(lam=float(x[1]))))

    found = root(system, [alpha, lam], method="hybr", options={"xtol": 1e-13})
    if not found.success:
        raise NotAFoldError(f"not a fold: no double zero near α={alpha}, λ={lam}: {found.message}")
    a, lam_ = (float(x) for x in found.x)
    g, slope = G_with_slope(a, params.evolve(lam=lam_))
    logger.info(f"fold at ε={params.epsilon}: α={a:.12g}, λ={lam_:.12g}")
    return FoldPoint(alpha=a, lam=lam_, g=g, g_slope=slope)


def fold_direction(
    params: ProblemParams, alpha1: float, threshold: float = FOLD_THRESHOLD
) -> FoldReport:
    """
    h′(π) = ∂G/∂λ at a double zero α₁ of G.

    chain_holds records u < 0 on [0, π], v(π) > 0 and h′(π) > 0, the chain that
    makes new solutions appear only as λ increases.
    """
    params = params.truncated()
    traj = integrate_truncated(
        params,
        0.0,
        math.pi,
        (alpha1, 0.0),
        variational=[Variational.ALPHA, Variational.LAMBDA],
    )
    g, slope = traj.final("du"), traj.final("dv")
    if abs(g) > threshold or abs(slope) > threshold:
        raise NotAFoldError(
            f"not a fold: |G|={abs(g):.3e}, |G′|={abs(slope):.3e} exceed {threshold} at α={alpha1}"
        )
    t = np.linspace(0.0, math.pi, GRID)
    u_max = float(np.max(traj.u(t)))
    v_pi, h_prime_pi = traj.final("v"), traj.final("dh")
    fd = (
        G(alpha1, params.evolve(lam=params.lam + LAMBDA_DELTA))
        - G(alpha1, params.evolve(lam=params.lam - LAMBDA_DELTA))
    ) / (2.0 * LAMBDA_DELTA)
    chain = u_max < 0 and v_pi > 0 and h_prime_pi > 0
    if not chain:
        logger.warning(
            f"fold chain fails at ε={params.epsilon}: max u={u_max:.3g}, v(π)={v_pi:.3g}, "
            f"h′(π)={h_prime_pi:.3g}"
        )
    return FoldReport(
        lam=params.lam,
        epsilon=params.epsilon,
        alpha=alpha1,
        g=g,
        g_slope=slope,
        u_max=u_max,
        v_pi=v_pi,
        h_prime_pi=h_prime_pi,
        fd_h_prime_pi=fd,
        chain_holds=chain,
    )
