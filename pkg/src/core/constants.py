import logging
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from core.equilibria import EquilibriumBranches, energy_H, solve_cubic_branches
from core.errors import (
    LambdaBelowLambda0Error,
    NoFiniteLambda0Error,
    NoHomoclinicError,
    NoSignChangeError,
)
from core.forcing import ForcingSpec

logger = logging.getLogger(__name__)

LAMBDA_BRACKET = (1e-6, 3.0)


def fold_level(lam: float) -> float:
    """p_λ(−√(λ/3)) = (2λ/3)√(λ/3), the largest |c| for which u³ − λu + c has three real roots."""
    return (2.0 * lam / 3.0) * math.sqrt(lam / 3.0)


def compute_lambda0(forcing: ForcingSpec | None = None) -> float:
    """λ at which max|g| equals (2λ/3)√(λ/3); 3/2^(2/3) for cos t."""
    forcing = forcing or ForcingSpec.cosine()
    amplitude = forcing.sup_abs()
    if amplitude == 0.0:
        raise NoFiniteLambda0Error()
    hi = 1.0
    while fold_level(hi) < amplitude:
        hi *= 2.0
    return float(brentq(lambda lam: fold_level(lam) - amplitude, 0.0, hi, xtol=1e-14))


def homoclinic_anchor(lam: float, kappa: float) -> float:
    """
    Turning point V_κ(0) of the homoclinic orbit of v̈ = v³ − λv + κ at the upper saddle ū.

    The energy level equation factors as ¼(v − ū)²(v² + 2ūv + 3ū² − 2λ) = 0; the orbit
    turns at the larger root of the quadratic factor, the first level crossing below ū.
    """
    roots = solve_cubic_branches(lam, kappa)
    if roots.count < 3:
        raise NoHomoclinicError(lam, kappa)
    u_bar = roots.roots[2]
    disc = 2.0 * (lam - u_bar * u_bar)
    if disc <= 0.0:
        raise NoHomoclinicError(lam, kappa)
    return -u_bar + math.sqrt(disc)


def lambda_gap(lam: float) -> float:
    """V₁(0) − U₀(π) for cos t forcing."""
    middle_at_pi = solve_cubic_branches(lam, -1.0).roots[1]
    return homoclinic_anchor(lam, 1.0) - middle_at_pi


def compute_Lambda() -> float:
    """Λ = inf{λ > λ₀ : V₁(0) < U₀(π)} for cos t forcing."""
    lambda0 = compute_lambda0()
    lo, hi = lambda0 + LAMBDA_BRACKET[0], LAMBDA_BRACKET[1]
    s_lo, s_hi = lambda_gap(lo), lambda_gap(hi)
    if s_lo * s_hi >= 0:
        raise NoSignChangeError(
            f"no sign change: V₁(0) − U₀(π) is {s_lo:.3e} at λ={lo} and {s_hi:.3e} at λ={hi}"
        )
    Lambda = float(brentq(lambda_gap, lo, hi, xtol=1e-12))
    logger.debug(f"Λ = {Lambda}")
    return Lambda


def layer_rate(lam: float, forcing: ForcingSpec | None = None) -> float:
    """K = √(Ū(0) − √(λ/3))."""
    forcing = forcing or ForcingSpec.cosine()
    upper = EquilibriumBranches(lam, forcing).upper(0.0)
    gap = float(upper) - math.sqrt(lam / 3.0)
    if not gap > 0:
        raise LambdaBelowLambda0Error(lam, compute_lambda0(forcing))
    return math.sqrt(gap)


def tail_constant(lam: float, forcing: ForcingSpec | None = None) -> float:
    """M₁ = 2(Ū(π) − √(λ/3))."""
    forcing = forcing or ForcingSpec.cosine()
    upper = float(EquilibriumBranches(lam, forcing).upper(math.pi))
    return 2.0 * (upper - math.sqrt(lam / 3.0))


@dataclass(frozen=True)
class CriticalConstants:
    lam: float
    lambda0: float
    Lambda: float | None
    K: float | None

    def H(self, u: float) -> float:
        return float(energy_H(u, self.lam))


def critical_constants(lam: float, forcing: ForcingSpec | None = None) -> CriticalConstants:
    """λ₀ for the forcing, plus Λ (cos t only) and K when λ > λ₀."""
    forcing = forcing or ForcingSpec.cosine()
    lambda0 = compute_lambda0(forcing)
    Lambda = compute_Lambda() if forcing == ForcingSpec.cosine() else None
    K = layer_rate(lam, forcing) if lam > lambda0 else None
    return CriticalConstants(lam=lam, lambda0=lambda0, Lambda=Lambda, K=K)
