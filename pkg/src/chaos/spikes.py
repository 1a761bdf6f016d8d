"""
The spike family w_k(t) = (−1)^k w₀(t − kπ) restricted to |w_k| ≤ b, and the
barrier curves f±, g± built from it.

w₀ is integrated once, forward and backward from (ᾱ, 0) to its ±b crossings;
every other spike is a translation, and for odd k a reflection, of it.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property, partial

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import brentq

from chaos.certificate import certify_condition_A
from core.errors import VerificationFailed
from core.problem import ProblemParams
from integrator import FunctionCurve, Trajectory, cross_b, integrate, join_trajectories
from schema import CertificateMethod, SpikeRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpikeFamily:
    params: ProblemParams
    alpha_bar: float
    b: float
    w0: Trajectory
    k_max: int

    @property
    def s0(self) -> float:
        return self.w0.span[0]

    @property
    def S0(self) -> float:
        return self.w0.span[1]

    def support(self, k: int) -> tuple[float, float]:
        return k * math.pi + self.s0, k * math.pi + self.S0

    @cached_property
    def flank_offset(self) -> float:
        """r in (s₀, 0) with w₀(r) = √(λ/3), where w₀ leaves its s₀ end through the g± level."""
        level = math.sqrt(self.params.lam / 3.0)
        return float(brentq(lambda r: float(self.w0.u(r)) - level, self.s0, 0.0, xtol=1e-13))

    def flank(self, k: int) -> float:
        """The time on the s_k side of w_k where |w_k| = √(λ/3)."""
        return k * math.pi + self.flank_offset

    def _component(self, k: int, t: ArrayLike, which: int, outside: float) -> NDArray[np.float64]:
        t_arr = np.asarray(t, dtype=float)
        flat = np.atleast_1d(t_arr)
        lo, hi = self.support(k)
        sign = -1.0 if k % 2 else 1.0
        out = np.full(flat.shape, sign * outside)
        inside = (flat >= lo) & (flat <= hi)
        if inside.any():
            out[inside] = sign * self.w0.dense(flat[inside] - k * math.pi)[which]
        return out.reshape(t_arr.shape)

    def value(self, k: int, t: ArrayLike) -> NDArray[np.float64]:
        """w_k(t), continued by the constant (−1)^k b outside the support."""
        return self._component(k, t, 0, self.b)

    def slope(self, k: int, t: ArrayLike) -> NDArray[np.float64]:
        return self._component(k, t, 1, 0.0)

    def curve(self, k: int) -> FunctionCurve:
        return FunctionCurve(partial(self.value, k), partial(self.slope, k), self.support(k))

    def records(self) -> list[SpikeRecord]:
        return [
            SpikeRecord(
                index=k,
                parity="up" if k % 2 else "down",
                s=self.support(k)[0],
                S=self.support(k)[1],
            )
            for k in range(self.k_max + 1)
        ]

    def _envelope(self, t: ArrayLike, parity: int, which: int) -> NDArray[np.float64]:
        t_arr = np.asarray(t, dtype=float)
        flat = np.atleast_1d(t_arr)
        k = 2.0 * np.round((flat - parity * math.pi) / (2.0 * math.pi)) + parity
        shifted = flat - k * math.pi
        sign = -1.0 if parity else 1.0
        out = np.full(flat.shape, sign * self.b if which == 0 else 0.0)
        inside = (shifted >= self.s0) & (shifted <= self.S0)
        if inside.any():
            out[inside] = sign * self.w0.dense(shifted[inside])[which]
        return out.reshape(t_arr.shape)

    def f_plus(self, t: ArrayLike) -> NDArray[np.float64]:
        """w_k on the supports of the even spikes, b elsewhere."""
        return self._envelope(t, 0, 0)

    def f_minus(self, t: ArrayLike) -> NDArray[np.float64]:
        """w_k on the supports of the odd spikes, −b elsewhere."""
        return self._envelope(t, 1, 0)

    def g_plus(self, t: ArrayLike) -> NDArray[np.float64]:
        """max(√(λ/3), f₋)."""
        return np.maximum(math.sqrt(self.params.lam / 3.0), self.f_minus(t))

    def g_minus(self, t: ArrayLike) -> NDArray[np.float64]:
        """min(−√(λ/3), f₊)."""
        return np.minimum(-math.sqrt(self.params.lam / 3.0), self.f_plus(t))

    def _g_plus_slope(self, t: ArrayLike) -> NDArray[np.float64]:
        above = self.f_minus(t) > math.sqrt(self.params.lam / 3.0)
        return np.where(above, self._envelope(t, 1, 1), 0.0)

    def _g_minus_slope(self, t: ArrayLike) -> NDArray[np.float64]:
        below = self.f_plus(t) < -math.sqrt(self.params.lam / 3.0)
        return np.where(below, self._envelope(t, 0, 1), 0.0)

    def barrier_curves(self) -> dict[str, FunctionCurve]:
        return {
            "f+": FunctionCurve(self.f_plus, partial(self._envelope, parity=0, which=1)),
            "f-": FunctionCurve(self.f_minus, partial(self._envelope, parity=1, which=1)),
            "g+": FunctionCurve(self.g_plus, self._g_plus_slope),
            "g-": FunctionCurve(self.g_minus, self._g_minus_slope),
        }

    def sample(self, t: ArrayLike) -> dict[str, NDArray[np.float64]]:
        """w_k (NaN off the support) for k ≤ k_max and the four barrier curves on t."""
        t_arr = np.asarray(t, dtype=float)
        columns: dict[str, NDArray[np.float64]] = {}
        for k in range(self.k_max + 1):
            lo, hi = self.support(k)
            columns[f"w{k}"] = np.where((t_arr >= lo) & (t_arr <= hi), self.value(k, t_arr), np.nan)
        columns["f+"] = self.f_plus(t_arr)
        columns["f-"] = self.f_minus(t_arr)
        columns["g+"] = self.g_plus(t_arr)
        columns["g-"] = self.g_minus(t_arr)
        return columns


def _half_spike(params: ProblemParams, alpha_bar: float, b: float, tend: float) -> Trajectory:
    traj = integrate(params, 0.0, tend, (alpha_bar, 0.0), events=[cross_b(b, 1, terminal=True)])
    if traj.stop_label != "b+":
        side = "forward" if tend > 0 else "backward"
        raise VerificationFailed(f"w₀ does not reach b={b} {side} within |t| ≤ π")
    return traj


def build_spikes(
    params: ProblemParams, alpha_bar: float | None = None, k_max: int = 8
) -> SpikeFamily:
    """
    The spike family at params, after certifying Condition A directly.

    Raises VerificationFailed when Condition A does not hold and ValueError when
    the forcing lacks the symmetry g(t + π) = −g(t) the reflections rely on.
    """
    if not params.forcing.is_half_antiperiodic():
        raise ValueError("spikes need a forcing with g(t + π) = −g(t)")
    params = params.evolve(truncate=False)
    certificate = certify_condition_A(
        params, CertificateMethod.DIRECT, alpha_bar, barrier=params.barrier
    )
    if not certificate.holds:
        raise VerificationFailed(
            f"Condition A does not hold at ε={params.epsilon}, λ={params.lam} "
            f"from ᾱ={certificate.alpha_bar}"
        )
    b = certificate.b
    forward = _half_spike(params, certificate.alpha_bar, b, math.pi)
    backward = _half_spike(params, certificate.alpha_bar, b, -math.pi)
    w0 = join_trajectories([backward, forward])
    family = SpikeFamily(params, certificate.alpha_bar, b, w0, k_max)
    logger.info(
        f"spike family at ε={params.epsilon}, λ={params.lam}: "
        f"support [{family.s0:.6g}, {family.S0:.6g}]"
    )
    return family
