"""
O(ε²) tracking of the equilibrium branches away from the layers.

The solutions handled here are even Neumann solutions computed on [0, π];
they are extended to whatever interval a check asks for by even reflection.
"""

import logging
import math
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray

from core.equilibria import EquilibriumBranches
from core.errors import SideViolationError
from core.problem import ProblemParams
from integrator import Trajectory
from schema import BandReport

logger = logging.getLogger(__name__)

DEFAULT_MU = 0.3


class Band(StrEnum):
    LOWER = "lower"
    UPPER = "upper"

    @property
    def sign(self) -> int:
        return -1 if self == Band.LOWER else 1


def covering(solution: Trajectory, lo: float, hi: float) -> Trajectory:
    """Even reflections of solution about its span ends until it covers [lo, hi]."""
    for _ in range(8):
        a, b = solution.span
        if a <= lo + 1e-12 and b >= hi - 1e-12:
            return solution
        solution = solution.even_extension(b) if b < hi - 1e-12 else solution.even_extension(a)
    raise ValueError(f"cannot extend {solution.span} to cover [{lo}, {hi}]")


def resolution(epsilon: float) -> float:
    return min(epsilon / 10.0, 1e-3)


def sample_times(lo: float, hi: float, epsilon: float) -> NDArray[np.float64]:
    return np.linspace(lo, hi, max(2, math.ceil((hi - lo) / resolution(epsilon)) + 1))


def check_side(solution: Trajectory, lam: float, band: Band, lo: float, hi: float) -> None:
    """Raise SideViolationError at the first t in [lo, hi] where band·u < √(λ/3)."""
    level = math.sqrt(max(lam, 0.0) / 3.0)
    t = sample_times(lo, hi, solution.params.epsilon)
    u = solution.u(t)
    wrong = np.flatnonzero(band.sign * u < level)
    if wrong.size:
        i = wrong[0]
        raise SideViolationError(float(t[i]), float(u[i]), band.sign * level)


def band_check(
    solution: Trajectory,
    band: Band,
    interval: tuple[float, float],
    mu: float = DEFAULT_MU,
    *,
    name: str = "u",
    params: ProblemParams | None = None,
) -> BandReport:
    """
    sup |u − U| and sup ε|u′ − U′| on [c + μ, d − μ] against U̲ (lower) or Ū (upper).

    The side condition is checked on the whole of [c, d] first.
    """
    params = params or solution.params
    c, d = interval
    if mu < 0 or c + mu >= d - mu:
        raise ValueError(f"μ={mu} leaves no room inside [{c}, {d}]")
    solution = covering(solution, c, d)
    check_side(solution, params.lam, band, c, d)

    branches = EquilibriumBranches(params.lam, params.forcing)
    t = sample_times(c + mu, d - mu, params.epsilon)
    y = solution.dense(t)
    U = branches.lower(t) if band == Band.LOWER else branches.upper(t)
    dU = branches.slope(U, t)
    eps = params.epsilon
    e0 = float(np.max(np.abs(y[0] - U)))
    e1 = float(np.max(eps * np.abs(y[1] - dU)))
    M0, M0_prime = e0 / eps**2, e1 / eps**2
    logger.debug(f"band {band} for {name} at ε={eps}: e0={e0:.3e}, e1={e1:.3e}")
    return BandReport(
        solution=name,
        branch=str(band),
        c=c,
        d=d,
        mu=mu,
        epsilon=eps,
        e0=e0,
        e1=e1,
        M0=M0,
        M0_prime=M0_prime,
        combined=(M0 + M0_prime + 1.0) * eps**2,
    )
