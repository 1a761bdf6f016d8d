"""
Layers of a solution against the limit profiles, and exponential tail bounds.

A layer centred at t_c is compared on the rescaled window t = t_c + ετ with
the profile of its kind. Spikes sit at the ends of [0, π] and are compared
one-sided; interior layers near π/2 are aligned on their zero crossing.
"""

import logging
import math
from enum import StrEnum

import numpy as np
from scipy.optimize import brentq

from asymptotics.bands import Band, check_side, covering, sample_times
from core.constants import layer_rate, tail_constant
from core.errors import WindowUnreachableError
from core.problem import ProblemParams
from core.profiles import LimitKind, LimitProfile, limit_profile
from integrator import LevelCurve, Trajectory, crossing_times
from schema import LayerReport, TailReport

logger = logging.getLogger(__name__)

WINDOW_TOL = 1e-3
WINDOW_SAMPLES = 801


class LayerKind(StrEnum):
    SPIKE_0 = "spike-0"
    SPIKE_PI = "spike-pi"
    INTERIOR_DOWN = "interior-down"
    INTERIOR_UP = "interior-up"


def profile_for(kind: LayerKind, params: ProblemParams) -> LimitProfile:
    lam = params.lam
    if kind == LayerKind.SPIKE_0:
        return limit_profile(LimitKind.HOMOCLINIC, lam, kappa=float(params.forcing.value(0.0)))
    if kind == LayerKind.SPIKE_PI:
        kappa = -float(params.forcing.value(math.pi))
        return limit_profile(LimitKind.HOMOCLINIC, lam, kappa=kappa).reflected(
            LimitKind.HOMOCLINIC_MINUS_ONE
        )
    if kind == LayerKind.INTERIOR_DOWN:
        return limit_profile(LimitKind.HETEROCLINIC_PLUS, lam)
    return limit_profile(LimitKind.HETEROCLINIC_MINUS, lam)


def _profile_zero(profile: LimitProfile) -> float:
    """τ at which a heteroclinic profile crosses zero."""
    sign = np.sign(profile.values)
    i = int(np.flatnonzero(sign[:-1] * sign[1:] <= 0)[0])
    return float(brentq(lambda s: float(profile.value(s)), profile.tau[i], profile.tau[i + 1]))


def layer_center(solution: Trajectory, kind: LayerKind, near: float = 0.5 * math.pi) -> float:
    """0 or π for spikes; for interior layers the zero crossing of u closest to near."""
    if kind == LayerKind.SPIKE_0:
        return 0.0
    if kind == LayerKind.SPIKE_PI:
        return math.pi
    direction = -1 if kind == LayerKind.INTERIOR_DOWN else 1
    hits = [e for e in crossing_times(solution, LevelCurve(0.0), "u=0") if e.direction == direction]
    if not hits:
        raise WindowUnreachableError(f"profile window unreachable: no {kind} zero crossing")
    return min(hits, key=lambda e: abs(e.t - near)).t


def _preceding_extremum(solution: Trajectory, center: float, kind: LayerKind) -> float | None:
    """Time of the last maximum (down layers) or minimum (up layers) before center."""
    want = -1 if kind == LayerKind.INTERIOR_DOWN else 1
    hits = [
        e.t
        for e in crossing_times(solution, LevelCurve(0.0), "du=0", component="du")
        if e.direction == want and e.t < center
    ]
    return max(hits) if hits else None


def layer_profile_check(
    solution: Trajectory,
    kind: LayerKind,
    params: ProblemParams | None = None,
    T: float | None = None,
    *,
    near: float = 0.5 * math.pi,
) -> LayerReport:
    """
    sup |u(t_c + ετ) − V(τ)| over the window, τ ∈ [0, T] at t = 0, [−T, 0] at
    t = π and [−T, T] for interior layers.
    """
    params = params or solution.params
    eps = params.epsilon
    profile = profile_for(kind, params)
    T = profile.settle_window(WINDOW_TOL) if T is None else T
    center = layer_center(solution, kind, near)
    if kind == LayerKind.SPIKE_0:
        tau = np.linspace(0.0, T, WINDOW_SAMPLES)
        shift = 0.0
    elif kind == LayerKind.SPIKE_PI:
        tau = np.linspace(-T, 0.0, WINDOW_SAMPLES)
        shift = 0.0
    else:
        tau = np.linspace(-T, T, WINDOW_SAMPLES)
        shift = _profile_zero(profile)

    t = center + eps * tau
    lo, hi = solution.span
    if t[0] < lo - 1e-12 or t[-1] > hi + 1e-12:
        raise WindowUnreachableError(
            f"profile window unreachable: [{t[0]:.6g}, {t[-1]:.6g}] leaves the solution's span"
        )
    u = solution.u(np.clip(t, lo, hi))
    bound = 2.0 * params.barrier
    if np.any(np.abs(u) > bound):
        raise WindowUnreachableError(f"profile window unreachable: |u| exceeds 2b = {bound}")
    error = float(np.max(np.abs(u - profile.value(tau + shift))))

    extremum = offset = offset_bound = None
    if kind in (LayerKind.INTERIOR_DOWN, LayerKind.INTERIOR_UP):
        extremum = _preceding_extremum(solution, center, kind)
        if extremum is not None:
            offset = center - extremum
        if 0 < eps < 1:
            offset_bound = 3.0 * eps * abs(math.log(eps)) / layer_rate(params.lam, params.forcing)
    logger.debug(f"{kind} layer at t={center:.6g}, ε={eps}: profile error {error:.3e}")
    return LayerReport(
        kind=str(kind),
        epsilon=eps,
        center=center,
        extremum_t=extremum,
        offset=offset,
        offset_bound=offset_bound,
        window=T,
        profile_error=error,
        value_at_center=float(solution.u(center)),
    )


def center_trend(reports: list[LayerReport], target: float = 0.5 * math.pi) -> bool:
    """Layer centres approach target as ε decreases (reports in decreasing ε)."""
    ordered = sorted(reports, key=lambda r: r.epsilon, reverse=True)
    gaps = [abs(r.center - target) for r in ordered]
    return all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))


def exponential_tail_check(
    solution: Trajectory,
    reference: Trajectory,
    reference_name: str,
    interval: tuple[float, float],
    mu: float,
    params: ProblemParams | None = None,
) -> TailReport:
    """
    sup(|u − ref| + (ε/2K)|u′ − ref′|) on [c + μ, d − μ] against M₁e^{−Kμ/ε}.

    The reference u1 pins the solution below −√(λ/3), u5 above √(λ/3).
    """
    params = params or solution.params
    band = Band.LOWER if reference_name == "u1" else Band.UPPER
    c, d = interval
    solution = covering(solution, c, d)
    reference = covering(reference, c, d)
    check_side(solution, params.lam, band, c, d)

    eps = params.epsilon
    K = layer_rate(params.lam, params.forcing)
    M1 = tail_constant(params.lam, params.forcing)
    t = sample_times(c + mu, d - mu, eps)
    y, r = solution.dense(t), reference.dense(t)
    left = float(np.max(np.abs(y[0] - r[0]) + eps / (2.0 * K) * np.abs(y[1] - r[1])))
    right = M1 * math.exp(-K * mu / eps)
    return TailReport(
        reference=reference_name,
        c=c,
        d=d,
        mu=mu,
        epsilon=eps,
        K=K,
        M1=M1,
        left=left,
        right=right,
        holds=left <= right,
    )
