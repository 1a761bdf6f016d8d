"""
Limit profiles of the frozen equation v̈ = v³ − λv + κ.

Homoclinic profiles V_κ leave the upper saddle ū and turn at V_κ(0); the
heteroclinic V₀± connect ±√λ at κ = 0. Profiles are integrated from their
anchor at τ = 0 and evaluated by cubic Hermite interpolation, returning the
saddle value outside the sampled window.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from core.constants import homoclinic_anchor
from core.equilibria import EquilibriumBranches, frozen_potential, solve_cubic_branches
from core.errors import ProfileWindowError
from core.forcing import ForcingSpec
from core.problem import default_barrier

logger = logging.getLogger(__name__)

PROFILE_RTOL = 1e-12
PROFILE_ATOL = 1e-13


class LimitKind(StrEnum):
    HOMOCLINIC = "homoclinic"
    HOMOCLINIC_MINUS_ONE = "homoclinic-minus-one"
    HETEROCLINIC_PLUS = "heteroclinic-plus"
    HETEROCLINIC_MINUS = "heteroclinic-minus"


def heteroclinic_delta(lam: float) -> float:
    """Anchor offset of V₀⁺ below √λ: min(0.1, (Ū(0) − √(λ/3))/4)."""
    upper0 = float(EquilibriumBranches(lam, ForcingSpec.cosine()).upper(0.0))
    if not math.isfinite(upper0):
        return 0.1
    return min(0.1, (upper0 - math.sqrt(lam / 3.0)) / 4.0)


def heteroclinic_closed_form(
    lam: float, tau: ArrayLike, delta: float | None = None
) -> NDArray[np.float64]:
    """V₀⁺(τ) = −√λ·tanh(√(λ/2)(τ − τ₀)) with V₀⁺(0) = √λ − δ."""
    delta = heteroclinic_delta(lam) if delta is None else delta
    a, k = math.sqrt(lam), math.sqrt(lam / 2.0)
    tau0 = math.atanh(1.0 - delta / a) / k
    return -a * np.tanh(k * (np.asarray(tau, dtype=float) - tau0))


@dataclass(frozen=True)
class LimitProfile:
    kind: LimitKind
    lam: float
    kappa: float
    anchor: float
    tau: NDArray[np.float64]
    values: NDArray[np.float64]
    slopes: NDArray[np.float64]
    left_limit: float
    right_limit: float
    energy_drift: float
    _value_spline: CubicHermiteSpline = field(init=False, repr=False, compare=False)
    _slope_spline: CubicHermiteSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        accel = self.values**3 - self.lam * self.values + self.kappa
        value_spline = CubicHermiteSpline(self.tau, self.values, self.slopes)
        object.__setattr__(self, "_value_spline", value_spline)
        object.__setattr__(self, "_slope_spline", CubicHermiteSpline(self.tau, self.slopes, accel))

    @property
    def window(self) -> float:
        return float(self.tau[-1])

    def value(self, tau: ArrayLike) -> NDArray[np.float64]:
        tau = np.asarray(tau, dtype=float)
        out = self._value_spline(np.clip(tau, self.tau[0], self.tau[-1]))
        out = np.where(tau < self.tau[0], self.left_limit, out)
        return np.where(tau > self.tau[-1], self.right_limit, out)

    def slope(self, tau: ArrayLike) -> NDArray[np.float64]:
        tau = np.asarray(tau, dtype=float)
        out = self._slope_spline(np.clip(tau, self.tau[0], self.tau[-1]))
        return np.where((tau < self.tau[0]) | (tau > self.tau[-1]), 0.0, out)

    def energy(self) -> NDArray[np.float64]:
        return 0.5 * self.slopes**2 - frozen_potential(self.values, self.lam, self.kappa)

    def settle_window(self, tol: float = 1e-3) -> float:
        """Smallest τ beyond which the profile stays within tol of both limits."""
        far = (np.abs(self.values - self.right_limit) > tol) & (self.tau >= 0)
        far |= (np.abs(self.values - self.left_limit) > tol) & (self.tau <= 0)
        return float(np.max(np.abs(self.tau[far]))) if far.any() else 0.0

    def reflected(self, kind: LimitKind) -> "LimitProfile":
        """The profile −V(−τ) (or −V(τ) for homoclinics), relabelled as kind."""
        if kind in (LimitKind.HOMOCLINIC, LimitKind.HOMOCLINIC_MINUS_ONE):
            return LimitProfile(
                kind,
                self.lam,
                -self.kappa,
                -self.anchor,
                self.tau.copy(),
                -self.values,
                -self.slopes,
                -self.left_limit,
                -self.right_limit,
                self.energy_drift,
            )
        return LimitProfile(
            kind,
            self.lam,
            -self.kappa,
            -self.anchor,
            -self.tau[::-1],
            -self.values[::-1],
            self.slopes[::-1],
            -self.right_limit,
            -self.left_limit,
            self.energy_drift,
        )


def _integrate_frozen(
    lam: float, kappa: float, y0: tuple[float, float], T: float, step: float, bound: float
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    def rhs(_: float, y: NDArray[np.float64]) -> list[float]:
        return [y[1], y[0] ** 3 - lam * y[0] + kappa]

    def escape(_: float, y: NDArray[np.float64]) -> float:
        return bound - abs(y[0])

    escape.terminal = True  # type: ignore[attr-defined]
    grid = np.arange(0.0, abs(T) + 0.5 * step, step) * math.copysign(1.0, T)
    sol = solve_ivp(
        rhs,
        (0.0, grid[-1]),
        y0,
        method="DOP853",
        t_eval=grid,
        events=escape,
        rtol=PROFILE_RTOL,
        atol=PROFILE_ATOL,
    )
    if sol.status == 1 or sol.t.size < grid.size:
        raise ProfileWindowError(abs(T), bound)
    return sol.t, sol.y[0], sol.y[1]


def limit_profile(
    kind: LimitKind,
    lam: float,
    T: float | None = None,
    step: float = 0.01,
    kappa: float = 1.0,
    delta: float | None = None,
) -> LimitProfile:
    """Sample a limit profile on [−T, T]; T defaults to 12 saddle e-folding times."""
    if kind == LimitKind.HOMOCLINIC_MINUS_ONE:
        return limit_profile(LimitKind.HOMOCLINIC, lam, T, step, 1.0).reflected(kind)
    if kind == LimitKind.HETEROCLINIC_MINUS:
        plus = limit_profile(LimitKind.HETEROCLINIC_PLUS, lam, T, step, delta=delta)
        return plus.reflected(kind)

    bound = 2.0 * default_barrier(lam, abs(kappa) if kind == LimitKind.HOMOCLINIC else 1.0)
    if kind == LimitKind.HOMOCLINIC:
        saddle = solve_cubic_branches(lam, kappa).roots[-1]
        anchor = homoclinic_anchor(lam, kappa)
        rate = math.sqrt(3.0 * saddle**2 - lam)
        T = 12.0 / rate if T is None else T
        tau, v, dv = _integrate_frozen(lam, kappa, (anchor, 0.0), T, step, bound)
        tau = np.concatenate([-tau[:0:-1], tau])
        values = np.concatenate([v[:0:-1], v])
        slopes = np.concatenate([-dv[:0:-1], dv])
        left = right = saddle
    else:
        kappa = 0.0
        saddle = math.sqrt(lam)
        delta = heteroclinic_delta(lam) if delta is None else delta
        anchor = saddle - delta
        level = frozen_potential(anchor, lam, 0.0) - frozen_potential(saddle, lam, 0.0)
        speed = -math.sqrt(2.0 * max(float(level), 0.0))
        if T is None:
            transit = math.atanh(1.0 - delta / saddle) / math.sqrt(lam / 2.0)
            T = 12.0 / math.sqrt(2.0 * lam) + transit
        tau_f, v_f, dv_f = _integrate_frozen(lam, 0.0, (anchor, speed), T, step, bound)
        tau_b, v_b, dv_b = _integrate_frozen(lam, 0.0, (anchor, speed), -T, step, bound)
        tau = np.concatenate([tau_b[:0:-1], tau_f])
        values = np.concatenate([v_b[:0:-1], v_f])
        slopes = np.concatenate([dv_b[:0:-1], dv_f])
        left, right = saddle, -saddle

    energy = 0.5 * slopes**2 - frozen_potential(values, lam, kappa)
    drift = float(np.max(np.abs(energy - energy[tau.size // 2])))
    logger.debug(f"{kind} profile at λ={lam}: window {T}, energy drift {drift:.2e}")
    return LimitProfile(kind, lam, kappa, anchor, tau, values, slopes, left, right, drift)
