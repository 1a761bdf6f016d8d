"""
λ-sweeps of the zero set of G and the first fold λ_b.

Zeros are counted from sign changes on an α-grid; sign-preserving pairs that
fall between two grid points are caught by minimising |G| around every grid
extremum of G.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from core.errors import CountOscillationError
from core.problem import ProblemParams
from core.settings import settings
from integrator import integrate_truncated
from schema import BifurcationDiagram, DiagramSlice, ZeroRecord
from shooting.functional import (
    G,
    G_with_slope,
    g_values,
    merge_roots,
    refine_root,
    scan_grid,
    sign_change_brackets,
)

logger = logging.getLogger(__name__)

LAMBDA_STEP = 0.02
LAMBDA_WIDTH = 1e-4


def fd_slope(params: ProblemParams, alpha: float, delta: float | None = None) -> float:
    """Central difference (G(α + δ) − G(α − δ))/2δ."""
    delta = settings.FD_DELTA if delta is None else delta
    return (G(alpha + delta, params) - G(alpha - delta, params)) / (2.0 * delta)


def _hidden_pairs(
    params: ProblemParams, alphas: np.ndarray, values: np.ndarray
) -> list[tuple[float, float]]:
    """Brackets of zero pairs hidden between grid points, found from local extrema of G."""
    pairs = []
    for i in range(1, alphas.size - 1):
        g = values[i]
        s = math.copysign(1.0, g)
        if not (s * g < s * values[i - 1] and s * g <= s * values[i + 1]):
            continue
        if np.sign(values[i - 1]) != np.sign(g) or np.sign(values[i + 1]) != np.sign(g):
            continue
        a, b = float(alphas[i - 1]), float(alphas[i + 1])
        found = minimize_scalar(
            lambda x: s * G(x, params), bounds=(a, b), method="bounded", options={"xatol": 1e-12}
        )
        if found.fun < 0:
            pairs += [(a, float(found.x)), (float(found.x), b)]
    return pairs


def zeros_at(
    params: ProblemParams,
    points: int | None = None,
    *,
    workers: int | None = None,
    seed: int | None = None,
) -> list[ZeroRecord]:
    """Every zero of G on [−b − 1, b + 1] with G′ by finite differences and by v′(π)."""
    params = params.truncated()
    b = params.barrier
    points = settings.SWEEP_POINTS if points is None else points
    alphas = scan_grid(-b - 1.0, b + 1.0, points, seed)
    values = g_values(params, alphas, workers)

    def fn(a: float) -> float:
        return G(a, params)

    roots = [refine_root(fn, a, b_) for _, a, b_, _, _ in sign_change_brackets(alphas, values)]
    roots += [refine_root(fn, a, b_) for a, b_ in _hidden_pairs(params, alphas, values)]
    records = []
    for alpha in merge_roots(roots):
        _, slope = G_with_slope(alpha, params)
        records.append(ZeroRecord(alpha=alpha, g_slope=fd_slope(params, alpha), v_prime_pi=slope))
    return records


def count_zeros(params: ProblemParams, points: int | None = None, **kwargs: int | None) -> int:
    return len(zeros_at(params, points, **kwargs))


def pairing_defect(params: ProblemParams, zeros: Sequence[ZeroRecord]) -> float:
    """Largest distance from −u_α(π) to the nearest zero, over all zeros α."""
    if not zeros:
        return 0.0
    alphas = np.array([z.alpha for z in zeros])
    worst = 0.0
    for alpha in alphas:
        image = -integrate_truncated(params, 0.0, math.pi, (alpha, 0.0)).final("u")
        worst = max(worst, float(np.min(np.abs(alphas - image))))
    return worst


def _first_transition(counts: list[int]) -> int | None:
    for i, (a, b) in enumerate(zip(counts, counts[1:])):
        if a == 1 and b > 1:
            return i
    return None


def _check_oscillation(lambdas: np.ndarray, counts: list[int], start: int) -> None:
    after = counts[start + 2 :]
    if any(c < counts[start + 1] for c in after):
        raise CountOscillationError(
            f"count oscillation: zero counts {counts} over λ ∈ [{lambdas[0]:.4g}, "
            f"{lambdas[-1]:.4g}] fall back after the first fold at λ≈{lambdas[start + 1]:.4g}"
        )


def locate_lambda_b(
    params: ProblemParams,
    lo: float,
    hi: float,
    width: float = LAMBDA_WIDTH,
    points: int | None = None,
    **kwargs: int | None,
) -> tuple[float, float, int]:
    """Bisection on the zero count between a 1-zero λ = lo and a multi-zero λ = hi."""
    above = count_zeros(params.evolve(lam=hi), points, **kwargs)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        n = count_zeros(params.evolve(lam=mid), points, **kwargs)
        if n > 1:
            hi, above = mid, n
        else:
            lo = mid
    return lo, hi, above


def sweep(
    params: ProblemParams,
    lambdas: Sequence[float] | None = None,
    *,
    lam_range: tuple[float, float] = (0.9, 1.3),
    step: float = LAMBDA_STEP,
    points: int | None = None,
    workers: int | None = None,
    seed: int | None = None,
) -> BifurcationDiagram:
    """
    Zeros of G on a λ-grid at params.epsilon, with λ_b refined by bisection on
    the first 1 → many transition of the zero count.
    """
    if lambdas is None:
        lambdas = np.arange(lam_range[0], lam_range[1] + 0.5 * step, step)
    grid = np.asarray(lambdas, dtype=float)
    params = params.truncated()
    slices = []
    for lam in grid:
        zeros = zeros_at(params.evolve(lam=float(lam)), points, workers=workers, seed=seed)
        slices.append(DiagramSlice(lam=float(lam), zeros=zeros))
        logger.debug(f"λ={lam:.5g}: {len(zeros)} zeros")
    counts = [s.count for s in slices]
    diagram = BifurcationDiagram(epsilon=params.epsilon, forcing=params.forcing, slices=slices)
    i = _first_transition(counts)
    if i is None:
        logger.info(f"no 1 → many transition on the λ-grid at ε={params.epsilon}: {counts}")
        return diagram
    _check_oscillation(grid, counts, i)
    lo, hi, above = locate_lambda_b(
        params, float(grid[i]), float(grid[i + 1]), points=points, workers=workers, seed=seed
    )
    lambda_b = 0.5 * (lo + hi)
    defect = None
    if params.forcing.is_even() and params.forcing.is_half_antiperiodic():
        defect = max(pairing_defect(params.evolve(lam=s.lam), s.zeros) for s in slices)
    logger.info(f"λ_b ≈ {lambda_b:.5f} at ε={params.epsilon}: 1 → {above} zeros")
    return diagram.model_copy(
        update={
            "lambda_b": lambda_b,
            "lambda_b_bracket": (lo, hi),
            "transition": (1, above),
            "pairing_defect": defect,
        }
    )
