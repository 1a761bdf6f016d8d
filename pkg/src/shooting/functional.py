"""
The boundary functional G(α) = u_α′(π) and batched α-scans of it.

Scans run on the truncated equation so G is total and continuous. Chunks have a
fixed size and are merged in order, so the worker count never changes a value.
"""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from core.errors import ScanTooCoarseError
from core.problem import ProblemParams
from core.settings import settings
from integrator import Variational, integrate_batch, integrate_truncated

logger = logging.getLogger(__name__)

BISECTION_WIDTH = 1e-6
MERGE_TOL = 1e-8


def G(alpha: float, params: ProblemParams) -> float:
    """u_α′(π) of the truncated equation with u(0) = α, u′(0) = 0."""
    return integrate_truncated(params, 0.0, math.pi, (alpha, 0.0)).final("du")


def G_with_slope(alpha: float, params: ProblemParams) -> tuple[float, float]:
    """(G(α), G′(α)) with G′(α) = v′(π) from the co-integrated variational equation."""
    traj = integrate_truncated(params, 0.0, math.pi, (alpha, 0.0), variational=[Variational.ALPHA])
    return traj.final("du"), traj.final("dv")


def reintegration_defect(params: ProblemParams, alpha: float, n: int = 400) -> float:
    """
    max |u(2π − t) − u(t)| on [0, π] for a fresh run from (α, 0) over one period.

    An even 2π-periodic solution satisfies u(2π − t) = u(t); the defect grows
    like the shooting map's amplification, so it is reported rather than enforced.
    """
    traj = integrate_truncated(params, 0.0, 2.0 * math.pi, (alpha, 0.0))
    t = np.linspace(0.0, math.pi, n)
    defect = float(np.max(np.abs(traj.u(2.0 * math.pi - t) - traj.u(t))))
    if defect > 1e-7:
        logger.warning(f"period defect {defect:.2e} at α={alpha:.12g}, ε={params.epsilon}")
    return defect


def _scan_chunk(
    params: ProblemParams, alphas: NDArray[np.float64], tend: float
) -> NDArray[np.float64]:
    initial = np.column_stack([alphas, np.zeros_like(alphas)])
    return integrate_batch(params.truncated(), 0.0, tend, initial)[1]


def g_values(
    params: ProblemParams,
    alphas: NDArray[np.float64],
    workers: int | None = None,
    tend: float = math.pi,
) -> NDArray[np.float64]:
    """G on many α at once, in chunks of SCAN_CHUNK, optionally over a process pool."""
    workers = settings.WORKER_COUNT if workers is None else workers
    size = settings.SCAN_CHUNK
    chunks = [alphas[i : i + size] for i in range(0, alphas.size, size)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            n = len(chunks)
            parts = list(pool.map(_scan_chunk, [params] * n, chunks, [tend] * n))
    else:
        parts = [_scan_chunk(params, chunk, tend) for chunk in chunks]
    return np.concatenate(parts) if parts else np.empty(0)


def scan_grid(lo: float, hi: float, points: int, seed: int | None = None) -> NDArray[np.float64]:
    """points α-values on [lo, hi]; interior points jittered by a quarter step from seed."""
    grid = np.linspace(lo, hi, points)
    seed = settings.SEED if seed is None else seed
    if points > 2:
        step = (hi - lo) / (points - 1)
        rng = np.random.default_rng(seed)
        grid[1:-1] += rng.uniform(-0.25, 0.25, points - 2) * step
    return grid


@dataclass(frozen=True)
class GCurve:
    params: ProblemParams
    alphas: NDArray[np.float64]
    values: NDArray[np.float64]


def g_curve(
    params: ProblemParams,
    lo: float | None = None,
    hi: float | None = None,
    points: int = 2001,
    workers: int | None = None,
) -> GCurve:
    """G sampled on a uniform α-grid, by default over [−b − 1, b + 1]."""
    b = params.barrier
    lo = -b - 1.0 if lo is None else lo
    hi = b + 1.0 if hi is None else hi
    alphas = np.linspace(lo, hi, points)
    return GCurve(params, alphas, g_values(params, alphas, workers))


def sign_change_brackets(
    alphas: NDArray[np.float64], values: NDArray[np.float64]
) -> list[tuple[int, float, float, float, float]]:
    """(index, a, b, G(a), G(b)) for each cell where G changes sign or vanishes at the right end."""
    s = np.sign(values)
    out = []
    for i in np.flatnonzero((s[:-1] * s[1:] < 0) | ((s[1:] == 0) & (s[:-1] != 0))):
        out.append((int(i), alphas[i], alphas[i + 1], values[i], values[i + 1]))
    return out


def refine_root(
    fn: Callable[[float], float],
    a: float,
    b: float,
    fa: float | None = None,
    fb: float | None = None,
    width: float = BISECTION_WIDTH,
    xtol: float = 1e-12,
) -> float:
    """Bisection down to width, then brentq inside the last bracket."""
    fa = fn(a) if fa is None else fa
    fb = fn(b) if fb is None else fb
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise ValueError(f"no sign change on [{a}, {b}]")
    while abs(b - a) > width:
        mid = 0.5 * (a + b)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return float(brentq(fn, a, b, xtol=xtol))


def merge_roots(roots: list[float], tol: float = MERGE_TOL) -> list[float]:
    merged: list[float] = []
    for r in sorted(roots):
        if not merged or r - merged[-1] > tol:
            merged.append(r)
    return merged


@dataclass(frozen=True)
class ZeroScan:
    roots: list[float]
    points: int
    counts: list[int]


def zeros_of_G(
    params: ProblemParams,
    lo: float | None = None,
    hi: float | None = None,
    points: int | None = None,
    workers: int | None = None,
    seed: int | None = None,
) -> ZeroScan:
    """
    All sign-change zeros of G on [lo, hi], defaulting to [−b − 1, b + 1].

    The scan density doubles until the bracket count is the same for
    SCAN_STABLE_ROUNDS consecutive densities.
    """
    b = params.barrier
    lo = -b - 1.0 if lo is None else lo
    hi = b + 1.0 if hi is None else hi
    points = settings.SCAN_POINTS if points is None else points
    counts: list[int] = []
    while True:
        alphas = scan_grid(lo, hi, points, seed)
        values = g_values(params, alphas, workers)
        brackets = sign_change_brackets(alphas, values)
        crowded = any(j - i < 2 for (i, *_), (j, *_) in zip(brackets, brackets[1:]))
        counts.append(len(brackets))
        logger.debug(f"α-scan with {points} points: {len(brackets)} sign changes")
        stable = len(counts) >= settings.SCAN_STABLE_ROUNDS and len(
            set(counts[-settings.SCAN_STABLE_ROUNDS :])
        ) == 1
        if stable and not crowded:
            break
        if points * 2 > settings.SCAN_MAX_POINTS:
            if crowded:
                raise ScanTooCoarseError(points)
            logger.warning(f"bracket count did not stabilise: {counts}")
            break
        points *= 2

    def fn(a: float) -> float:
        return G(a, params)

    roots = [refine_root(fn, a, b_) for _, a, b_, _, _ in brackets]
    roots = merge_roots(roots)
    logger.info(f"{len(roots)} zeros of G at ε={params.epsilon}, λ={params.lam}")
    return ZeroScan(roots=roots, points=points, counts=counts)
