"""
Boundary-value solves for small ε with scipy's solve_bvp.

The system is written for y = (u, εu′) so both components stay O(1) inside
layers of width ε. Initial guesses come from templates assembled out of the
equilibrium branches and the limit profiles. A direct solve that fails is
retried by continuation in ε from a larger ε down to the requested one.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import solve_bvp

from core.equilibria import EquilibriumBranches
from core.errors import CollocationError
from core.problem import ProblemParams
from core.profiles import LimitKind, LimitProfile, limit_profile
from core.settings import settings
from integrator import TerminalStatus, Trajectory

logger = logging.getLogger(__name__)

BASE_NODES = 401
LAYER_NODES = 161
LAYER_HALF_WIDTH = 16.0
CONTINUATION_RATIO = 0.85

GuessFn = Callable[[NDArray[np.float64]], NDArray[np.float64]]
Template = Callable[[ProblemParams], tuple[GuessFn, list[float]]]


class Boundary(StrEnum):
    VALUE = "u"
    SLOPE = "du"


@dataclass(frozen=True)
class BoundaryCondition:
    kind: Boundary
    value: float = 0.0


NEUMANN = BoundaryCondition(Boundary.SLOPE)
DIRICHLET_ZERO = BoundaryCondition(Boundary.VALUE)


class CollocationDense:
    """Dense output of a solve in (u, εu′), reported as (u, u′)."""

    def __init__(self, sol: Callable[[ArrayLike], NDArray[np.float64]], epsilon: float) -> None:
        self.sol = sol
        self.epsilon = epsilon

    def __call__(self, t: ArrayLike) -> NDArray[np.float64]:
        y = np.array(self.sol(np.asarray(t, dtype=float)), dtype=float)
        y[1] /= self.epsilon
        return y


@dataclass(frozen=True)
class Collocated:
    trajectory: Trajectory
    residual: float
    nodes: int
    epsilon_path: tuple[float, ...] = ()


def layer_mesh(a: float, b: float, epsilon: float, centers: Sequence[float]) -> NDArray[np.float64]:
    """Uniform nodes on [a, b] plus dense nodes within 16ε of each layer centre."""
    parts = [np.linspace(a, b, BASE_NODES)]
    for c in centers:
        parts.append(c + epsilon * np.linspace(-LAYER_HALF_WIDTH, LAYER_HALF_WIDTH, LAYER_NODES))
    x = np.unique(np.concatenate(parts))
    return x[(x >= a) & (x <= b)]


def _residual_terms(
    params: ProblemParams, left: BoundaryCondition, right: BoundaryCondition
):  # type: ignore[no-untyped-def]
    eps, lam = params.epsilon, params.lam
    g = params.forcing.value

    def fun(t: NDArray[np.float64], y: NDArray[np.float64]) -> NDArray[np.float64]:
        u = y[0]
        return np.vstack([y[1] / eps, (u**3 - lam * u + g(t)) / eps])

    def jac(t: NDArray[np.float64], y: NDArray[np.float64]) -> NDArray[np.float64]:
        out = np.zeros((2, 2, t.size))
        out[0, 1] = 1.0 / eps
        out[1, 0] = (3.0 * y[0] ** 2 - lam) / eps
        return out

    def term(cond: BoundaryCondition, y: NDArray[np.float64]) -> float:
        if cond.kind == Boundary.VALUE:
            return float(y[0] - cond.value)
        return float(y[1] - eps * cond.value)

    def bc(ya: NDArray[np.float64], yb: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.array([term(left, ya), term(right, yb)])

    return fun, jac, bc


def _solve(
    params: ProblemParams,
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    left: BoundaryCondition,
    right: BoundaryCondition,
    tol: float,
    max_nodes: int,
):  # type: ignore[no-untyped-def]
    fun, jac, bc = _residual_terms(params, left, right)
    return solve_bvp(fun, bc, x, y, fun_jac=jac, tol=tol, max_nodes=max_nodes)


def _initial_mesh(
    params: ProblemParams, a: float, b: float, template: Template
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    guess, centers = template(params)
    x = layer_mesh(a, b, params.epsilon, centers)
    u = guess(x)
    return x, np.vstack([u, params.epsilon * np.gradient(u, x)])


def _as_trajectory(params: ProblemParams, sol) -> Trajectory:  # type: ignore[no-untyped-def]
    y = sol.y.copy()
    y[1] /= params.epsilon
    return Trajectory(
        params=params,
        t0=float(sol.x[0]),
        t=sol.x.copy(),
        y=y,
        events=(),
        terminal=TerminalStatus.REACHED_TEND,
        dense=CollocationDense(sol.sol, params.epsilon),
    )


def epsilon_path(epsilon: float) -> NDArray[np.float64]:
    """Geometric ε-steps from min(COLLOCATION_EPSILON, 4ε) down to ε."""
    start = min(settings.COLLOCATION_EPSILON, 4.0 * epsilon)
    if start <= epsilon:
        start = 2.0 * epsilon
    n = math.ceil(math.log(start / epsilon) / math.log(1.0 / CONTINUATION_RATIO)) + 1
    return np.geomspace(start, epsilon, max(n, 2))


def collocate(
    params: ProblemParams,
    interval: tuple[float, float],
    template: Template,
    left: BoundaryCondition = NEUMANN,
    right: BoundaryCondition = NEUMANN,
    *,
    tol: float | None = None,
    max_nodes: int | None = None,
) -> Collocated:
    """Solve ε²u″ = u³ − λu + g(t) on interval with the given boundary conditions."""
    tol = settings.COLLOCATION_TOL if tol is None else tol
    max_nodes = settings.COLLOCATION_MAX_NODES if max_nodes is None else max_nodes
    a, b = interval
    x, y = _initial_mesh(params, a, b, template)
    sol = _solve(params, x, y, left, right, tol, max_nodes)
    if sol.success:
        return Collocated(_as_trajectory(params, sol), float(np.max(sol.rms_residuals)), sol.x.size)

    path = epsilon_path(params.epsilon)
    logger.info(
        f"direct collocation failed at ε={params.epsilon} ({sol.message}); "
        f"continuing from ε={path[0]:.4g} in {path.size} steps"
    )
    previous = None
    prev_eps = path[0]
    for eps in path:
        step = params.evolve(epsilon=float(eps))
        if previous is None:
            x, y = _initial_mesh(step, a, b, template)
        else:
            x, y = previous.x, previous.y.copy()
            y[1] *= eps / prev_eps
        sol = _solve(step, x, y, left, right, tol, max_nodes)
        if not sol.success:
            raise CollocationError(
                f"collocation failed at ε={eps:.6g} on the way to ε={params.epsilon}: {sol.message}"
            )
        previous, prev_eps = sol, eps
    return Collocated(
        _as_trajectory(params, previous),
        float(np.max(previous.rms_residuals)),
        previous.x.size,
        tuple(float(e) for e in path),
    )


# Templates


def _spike_profiles(params: ProblemParams) -> tuple[LimitProfile, LimitProfile]:
    """V_{g(0)} for the downward spike at t = 0 and −V_{−g(π)} for the upward spike at π."""
    g0 = float(params.forcing.value(0.0))
    g_pi = float(params.forcing.value(math.pi))
    down = limit_profile(LimitKind.HOMOCLINIC, params.lam, kappa=g0)
    up = limit_profile(LimitKind.HOMOCLINIC, params.lam, kappa=-g_pi).reflected(
        LimitKind.HOMOCLINIC_MINUS_ONE
    )
    return down, up


def layer_rate_guess(lam: float) -> float:
    return math.sqrt(abs(lam) / 2.0) + 0.5


def layer_spacing(params: ProblemParams) -> float:
    """Δ = 4ε·max(1, |ln ε|)/√(2λ) between neighbouring interior layers."""
    eps = params.epsilon
    return 4.0 * eps * max(1.0, abs(math.log(eps))) / math.sqrt(2.0 * params.lam)


def switch_between(
    params: ProblemParams, centers: Sequence[float], start_upper: bool
) -> GuessFn:
    """½(Ū + U̲) + ½(Ū − U̲)·s·∏ tanh(k(cᵢ − t)/ε), switching branches at each centre."""
    branches = EquilibriumBranches(params.lam, params.forcing)
    k = math.sqrt(params.lam / 2.0)
    eps = params.epsilon
    sign = 1.0 if start_upper else -1.0

    def guess(t: NDArray[np.float64]) -> NDArray[np.float64]:
        upper, lower = branches.upper(t), branches.lower(t)
        product = np.full_like(t, sign)
        for c in centers:
            product *= np.tanh(k * (c - t) / eps)
        return 0.5 * (upper + lower) + 0.5 * (upper - lower) * product

    return guess


def lowest_template(params: ProblemParams) -> tuple[GuessFn, list[float]]:
    branches = EquilibriumBranches(params.lam, params.forcing)
    return (lambda t: branches.lowest(t)), []


def up_half_template(params: ProblemParams) -> tuple[GuessFn, list[float]]:
    """lowest(t)·tanh(k(π/2 − t)/ε) on [0, π/2]."""
    branches = EquilibriumBranches(params.lam, params.forcing)
    k = layer_rate_guess(params.lam)
    eps = params.epsilon

    def guess(t: NDArray[np.float64]) -> NDArray[np.float64]:
        return branches.lowest(t) * np.tanh(k * (0.5 * math.pi - t) / eps)

    return guess, [0.5 * math.pi]


def spike_pi_template(params: ProblemParams) -> tuple[GuessFn, list[float]]:
    """U̲(t) + V₋₁((t − π)/ε) − U̲(π): the lower branch with an upward spike at π."""
    branches = EquilibriumBranches(params.lam, params.forcing)
    _, up = _spike_profiles(params)
    eps = params.epsilon

    def guess(t: NDArray[np.float64]) -> NDArray[np.float64]:
        return branches.lower(t) + up.value((t - math.pi) / eps) - up.right_limit

    return guess, [math.pi]


def m_maxima_template(m: int) -> Template:
    """Upper branch with a spike at 0, 2m − 3 layers around π/2, lower branch with a spike at π."""
    if m < 2:
        return spike_pi_template

    def template(params: ProblemParams) -> tuple[GuessFn, list[float]]:
        delta = layer_spacing(params)
        n = 2 * m - 3
        centers = [0.5 * math.pi + (i - (n - 1) / 2.0) * delta for i in range(n)]
        base = switch_between(params, centers, start_upper=True)
        down, up = _spike_profiles(params)
        eps = params.epsilon

        def guess(t: NDArray[np.float64]) -> NDArray[np.float64]:
            spikes = down.value(t / eps) - down.right_limit
            spikes += up.value((t - math.pi) / eps) - up.right_limit
            return base(t) + spikes

        return guess, [0.0, *centers, math.pi]

    return template


def upwind_template(m: int) -> Template:
    """2m − 1 layers on [π/2, π], the first centred at π/2, ending on the lower branch."""

    def template(params: ProblemParams) -> tuple[GuessFn, list[float]]:
        delta = layer_spacing(params)
        centers = [0.5 * math.pi + j * delta for j in range(2 * m - 1)]
        return switch_between(params, centers, start_upper=True), centers

    return template
