"""
λ_b(ε) along a decreasing ε-suite.

At ε ≥ COLLOCATION_EPSILON the fold is found by a λ-sweep and polished with
locate_fold. Below that the fold is continued in ε as the boundary-value
problem for (u, v, λ):

    ε²u″ = u³ − λu + g(t),   ε²v″ = (3u² − λ)v,
    u′(0) = u′(π) = 0,  v(0) = 1,  v′(0) = v′(π) = 0,

with λ an unknown parameter.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import solve_bvp

from bifurcation.sweep import sweep
from bifurcation.variational import FoldPoint, locate_fold
from core.constants import compute_lambda0
from core.errors import CollocationError, DuffingError
from core.problem import ProblemParams
from core.settings import settings
from integrator import Variational, integrate_truncated
from schema import BifurcationDiagram, LambdaBRow, LambdaBTable
from shooting.collocation import layer_mesh

logger = logging.getLogger(__name__)

CONTINUATION_RATIO = 0.85
SWEEP_MARGIN = 0.04


def _fold_guess(
    params: ProblemParams, lambda_b: float, alphas: Sequence[float]
) -> tuple[float, float]:
    """Midpoint of the closest pair of zeros just above λ_b."""
    if len(alphas) < 3:
        raise DuffingError(f"no zero pair above λ_b={lambda_b:.6g} at ε={params.epsilon}")
    ordered = sorted(alphas)
    gaps = np.diff(ordered)
    i = int(np.argmin(gaps))
    return 0.5 * (ordered[i] + ordered[i + 1]), lambda_b


def fold_from_diagram(
    params: ProblemParams, diagram: BifurcationDiagram, **kwargs: int | None
) -> FoldPoint:
    """The fold at the diagram's λ_b, from the closest zero pair at the upper bracket end."""
    if diagram.lambda_b is None or diagram.lambda_b_bracket is None:
        raise DuffingError(f"no 1 → many transition in the diagram at ε={diagram.epsilon}")
    params = params.evolve(epsilon=diagram.epsilon, forcing=diagram.forcing)
    hi = diagram.lambda_b_bracket[1]
    above = sweep(params, [hi], **kwargs).slices[0].zeros
    alpha, lam = _fold_guess(params, diagram.lambda_b, [z.alpha for z in above])
    return locate_fold(params, alpha, lam)


def _sweep_fold(
    params: ProblemParams, lam_lo: float, lam_hi: float, **kwargs: int | None
) -> FoldPoint:
    diagram = sweep(params, lam_range=(lam_lo, lam_hi), **kwargs)
    if diagram.lambda_b is None:
        raise DuffingError(
            f"no 1 → many transition for λ ∈ [{lam_lo:.4g}, {lam_hi:.4g}] "
            f"at ε={params.epsilon}"
        )
    return fold_from_diagram(params, diagram, **kwargs)


def _initial_state(
    params: ProblemParams, fold: FoldPoint
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(u, εu′, v, εv′) along the fold solution on a layer-adapted mesh."""
    at_fold = params.evolve(lam=fold.lam).truncated()
    traj = integrate_truncated(
        at_fold, 0.0, math.pi, (fold.alpha, 0.0), variational=[Variational.ALPHA]
    )
    x = layer_mesh(0.0, math.pi, params.epsilon, [0.0, math.pi])
    eps = params.epsilon
    y = np.vstack(
        [
            traj.component("u", x),
            eps * traj.component("du", x),
            traj.component("v", x),
            eps * traj.component("dv", x),
        ]
    )
    return x, y


def _fold_system(params: ProblemParams):  # type: ignore[no-untyped-def]
    eps = params.epsilon
    g = params.forcing.value

    def fun(
        t: NDArray[np.float64], y: NDArray[np.float64], p: NDArray[np.float64]
    ) -> NDArray[np.float64]:
        lam = p[0]
        u, v = y[0], y[2]
        return np.vstack(
            [
                y[1] / eps,
                (u**3 - lam * u + g(t)) / eps,
                y[3] / eps,
                (3.0 * u**2 - lam) * v / eps,
            ]
        )

    def bc(
        ya: NDArray[np.float64], yb: NDArray[np.float64], p: NDArray[np.float64]
    ) -> NDArray[np.float64]:
        return np.array([ya[1], yb[1], ya[2] - 1.0, ya[3], yb[3]])

    return fun, bc


def continue_fold(
    params: ProblemParams,
    fold: FoldPoint,
    epsilons: Sequence[float],
    *,
    tol: float | None = None,
    max_nodes: int | None = None,
) -> list[float]:
    """λ_b at each ε of a decreasing suite, continued from a fold at params.epsilon."""
    tol = settings.COLLOCATION_TOL if tol is None else tol
    max_nodes = settings.COLLOCATION_MAX_NODES if max_nodes is None else max_nodes
    x, y = _initial_state(params, fold)
    lam = fold.lam
    prev = params.epsilon
    out = []
    for target in epsilons:
        n = max(2, math.ceil(math.log(prev / target) / math.log(1.0 / CONTINUATION_RATIO)) + 1)
        for eps in np.geomspace(prev, target, n)[1:]:
            step = params.evolve(epsilon=float(eps))
            y = y.copy()
            y[1] *= eps / prev
            y[3] *= eps / prev
            mesh = np.union1d(x, layer_mesh(0.0, math.pi, float(eps), [0.0, math.pi]))
            y = np.vstack([np.interp(mesh, x, row) for row in y])
            fun, bc = _fold_system(step)
            sol = solve_bvp(fun, bc, mesh, y, p=[lam], tol=tol, max_nodes=max_nodes)
            if not sol.success:
                raise CollocationError(
                    f"fold continuation failed at ε={eps:.6g} (λ={lam:.6g}): {sol.message}"
                )
            x, y, lam, prev = sol.x, sol.y, float(sol.p[0]), float(eps)
            logger.debug(f"fold at ε={eps:.5g}: λ={lam:.8g} on {x.size} nodes")
        out.append(lam)
    return out


def lambda_b_limit(
    epsilons: Sequence[float],
    params: ProblemParams | None = None,
    *,
    points: int | None = None,
    workers: int | None = None,
    seed: int | None = None,
) -> LambdaBTable:
    """
    λ_b(ε) for a decreasing ε-suite together with the gap λ₀ − λ_b.

    params supplies the forcing and the starting λ-range; its epsilon is ignored.
    """
    suite = sorted((float(e) for e in epsilons), reverse=True)
    if not suite:
        raise ValueError("empty ε-suite")
    params = params or ProblemParams(epsilon=suite[0], lam=1.0)
    lambda0 = compute_lambda0(params.forcing)
    kwargs = {"points": points, "workers": workers, "seed": seed}

    values: list[float] = []
    lam_lo = min(params.lam, 0.9)
    last: tuple[ProblemParams, FoldPoint] | None = None
    shooting = [e for e in suite if e >= settings.COLLOCATION_EPSILON]
    for eps in shooting:
        at = params.evolve(epsilon=eps)
        fold = _sweep_fold(at, lam_lo, lambda0 + SWEEP_MARGIN, **kwargs)
        values.append(fold.lam)
        last = (at, fold)
        lam_lo = fold.lam - SWEEP_MARGIN
        logger.info(f"λ_b({eps}) = {fold.lam:.6f} by sweep and fold location")

    rest = suite[len(shooting) :]
    if rest:
        if last is None:
            start = params.evolve(epsilon=settings.COLLOCATION_EPSILON)
            fold = _sweep_fold(start, lam_lo, lambda0 + SWEEP_MARGIN, **kwargs)
            last = (start, fold)
        values += continue_fold(last[0], last[1], rest)
        logger.info(f"λ_b continued to ε={rest[-1]}: {values[-1]:.6f}")

    rows = [
        LambdaBRow(epsilon=eps, lambda_b=lam, gap=lambda0 - lam) for eps, lam in zip(suite, values)
    ]
    monotone = all(b.lambda_b >= a.lambda_b for a, b in zip(rows, rows[1:]))
    if not monotone:
        logger.warning(f"λ_b(ε) is not monotone along the suite: {[r.lambda_b for r in rows]}")
    above = [r for r in rows if r.gap <= 0]
    if above:
        logger.warning(f"λ_b ≥ λ₀ at ε = {[r.epsilon for r in above]}")
    return LambdaBTable(lambda0=lambda0, rows=rows, monotone=monotone, final_gap=rows[-1].gap)
