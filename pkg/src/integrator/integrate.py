"""
Adaptive integration of ε²u″ = u³ − λu + g(t) with co-integrated variational systems.

State layout is a sequence of (value, derivative) pairs: (u, u′) first, then
(v, v′) for ∂/∂α or ∂/∂β, (h, h′) for ∂/∂λ and (w, w′) for w = u′. Below
RESCALE_EPSILON the system is integrated in τ = t/ε with derivative components
stored as ε·x′; trajectories and events are always reported in t.
"""

import logging
import math
from collections.abc import Sequence
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import solve_ivp

from core.errors import StepUnderflowError
from core.problem import ProblemParams
from core.settings import settings
from integrator.events import EventSpec, guard
from integrator.trajectory import ScaledDense, TerminalStatus, Trajectory
from schema import EventKind, EventRecord

logger = logging.getLogger(__name__)


class Variational(StrEnum):
    ALPHA = "alpha"  # v(t0) = 1, v′(t0) = 0
    BETA = "beta"  # v(t0) = 0, v′(t0) = 1
    LAMBDA = "lambda"
    TIME = "time"


def component_names(flags: Sequence[Variational]) -> tuple[str, ...]:
    names = ["u", "du"]
    if Variational.ALPHA in flags or Variational.BETA in flags:
        names += ["v", "dv"]
    if Variational.LAMBDA in flags:
        names += ["h", "dh"]
    if Variational.TIME in flags:
        names += ["w", "dw"]
    return tuple(names)


def _time_scale(params: ProblemParams, rescale: bool | None) -> float:
    if rescale is None:
        rescale = params.epsilon < settings.RESCALE_EPSILON
    return params.epsilon if rescale else 1.0


def _vector_field(  # type: ignore[no-untyped-def]
    params: ProblemParams, names: tuple[str, ...], scale: float
):
    """Right-hand side in s = t/scale for states shaped (len(names) · n,)."""
    lam = params.lam
    b = params.barrier if params.truncate else None
    g, dg = params.forcing.value, params.forcing.derivative
    inv = 1.0 / params.epsilon**2 if scale == 1.0 else 1.0
    m = len(names)
    has_v, has_h, has_w = "v" in names, "h" in names, "w" in names

    if m == 2:
        gs = params.forcing.scalar()
        if b is None:

            def rhs_plain(s: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
                u = y[: y.size // 2]
                accel = inv * (u * u * u - lam * u + gs(scale * s))
                return np.concatenate([y[y.size // 2 :], accel])

            return rhs_plain

        def rhs_truncated(s: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
            uc = np.clip(y[: y.size // 2], -b, b)
            accel = inv * (uc * uc * uc - lam * uc + gs(scale * s))
            return np.concatenate([y[y.size // 2 :], accel])

        return rhs_truncated

    def rhs(s: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        t = scale * s
        Y = y.reshape(m, -1)
        u = Y[0]
        if b is None:
            uc = u
            dN = 3.0 * u * u - lam
        else:
            uc = np.clip(u, -b, b)
            dN = np.where(np.abs(u) < b, 3.0 * u * u - lam, 0.0)
        out = np.empty_like(Y)
        out[0::2] = Y[1::2]
        out[1] = inv * (uc * uc * uc - lam * uc + g(t))
        i = 2
        if has_v:
            out[i + 1] = inv * dN * Y[i]
            i += 2
        if has_h:
            out[i + 1] = inv * (dN * Y[i] - uc)
            i += 2
        if has_w:
            out[i + 1] = inv * (dN * Y[i] + dg(t))
        return out.ravel()

    return rhs


def _initial_state(
    params: ProblemParams,
    t0: float,
    initial: NDArray[np.float64],
    flags: Sequence[Variational],
    names: tuple[str, ...],
    scale: float,
) -> NDArray[np.float64]:
    """Initial states shaped (len(names), n) for n initial (u, u′) pairs."""
    u0, du0 = initial[:, 0], initial[:, 1]
    n = u0.size
    Y = np.zeros((len(names), n))
    Y[0], Y[1] = u0, du0
    if "v" in names:
        if Variational.BETA in flags:
            Y[3] = 1.0
        else:
            Y[2] = 1.0
    if "w" in names:
        j = names.index("w")
        Y[j] = du0
        Y[j + 1] = params.acceleration(t0, u0)
    Y[1::2] *= scale
    return Y


def _wrap_event(spec: EventSpec, scale: float):  # type: ignore[no-untyped-def]
    def event(s: float, y: NDArray[np.float64]) -> float:
        return spec.fn(scale * s, float(y[0]), float(y[1]) / scale)

    event.terminal = spec.terminal  # type: ignore[attr-defined]
    event.direction = spec.direction  # type: ignore[attr-defined]
    return event


def _event_record(
    params: ProblemParams, spec: EventSpec, t: float, u: float, du: float
) -> EventRecord:
    if spec.kind == EventKind.DERIVATIVE_ZERO:
        rate = float(params.acceleration(t, u))
    else:
        rate = du - spec.slope(t)
    return EventRecord(
        kind=spec.kind,
        label=spec.label,
        t=t,
        u=u,
        du=du,
        direction=int(np.sign(rate)),
        tangential=abs(rate) < settings.TANGENCY_TOL,
    )


def integrate(
    params: ProblemParams,
    t0: float,
    tend: float,
    initial: tuple[float, float],
    events: Sequence[EventSpec] = (),
    variational: Sequence[Variational] = (),
    *,
    rtol: float | None = None,
    atol: float | None = None,
    max_step: float | None = None,
    rescale: bool | None = None,
) -> Trajectory:
    """
    Integrate from (u, u′)(t0) = initial to tend, or to the first terminal event.

    Without truncation, leaving [−2b, 2b] stops the run with a guard status.
    """
    if tend == t0:
        raise ValueError("tend must differ from t0")
    rtol = settings.RTOL if rtol is None else rtol
    atol = settings.ATOL if atol is None else atol
    scale = _time_scale(params, rescale)
    names = component_names(variational)
    if max_step is None:
        max_step = 0.25 * min(1.0, params.epsilon) / scale

    specs = list(events)
    if not params.truncate:
        specs += [guard(2.0 * params.barrier, 1), guard(2.0 * params.barrier, -1)]

    y0 = _initial_state(params, t0, np.array([initial], dtype=float), variational, names, scale)
    sol = solve_ivp(
        _vector_field(params, names, scale),
        (t0 / scale, tend / scale),
        y0.ravel(),
        method="DOP853",
        dense_output=True,
        events=[_wrap_event(spec, scale) for spec in specs] or None,
        rtol=rtol,
        atol=atol,
        max_step=max_step,
    )
    if sol.status == -1:
        last = sol.y[:, -1] if sol.y.size else y0.ravel()
        state = tuple(float(x) for x in last)
        raise StepUnderflowError(sol.message, float(scale * sol.t[-1]), state)

    t = scale * sol.t
    y = sol.y.copy()
    y[1::2] /= scale
    records: list[EventRecord] = []
    terminal, stop_label = TerminalStatus.REACHED_TEND, None
    for i, spec in enumerate(specs):
        hits = sol.t_events[i]
        for te, ye in zip(hits, sol.y_events[i]):
            te_t, u_e, du_e = float(scale * te), float(ye[0]), float(ye[1] / scale)
            records.append(_event_record(params, spec, te_t, u_e, du_e))
        if sol.status == 1 and spec.terminal and len(hits) and hits[-1] == sol.t[-1]:
            if spec.kind == EventKind.GUARD:
                up = spec.direction > 0
                terminal = TerminalStatus.GUARD_UP if up else TerminalStatus.GUARD_DOWN
            else:
                terminal = TerminalStatus.EVENT_STOP
            stop_label = spec.label
    records.sort(key=lambda e: e.t, reverse=tend < t0)
    if terminal != TerminalStatus.REACHED_TEND:
        logger.debug(f"integration stopped at t={t[-1]:.6g}: {stop_label}")
    return Trajectory(
        params=params,
        t0=t0,
        t=t,
        y=y,
        events=tuple(records),
        terminal=terminal,
        dense=ScaledDense(sol.sol, scale),
        components=names,
        stop_label=stop_label,
    )


def integrate_truncated(
    params: ProblemParams,
    t0: float,
    tend: float,
    initial: tuple[float, float],
    events: Sequence[EventSpec] = (),
    variational: Sequence[Variational] = (),
    **kwargs: float | bool | None,
) -> Trajectory:
    """integrate with u³ − λu frozen at ±b; every solution exists up to tend."""
    truncated = params.truncated()
    return integrate(  # type: ignore[arg-type]
        truncated, t0, tend, initial, events, variational, **kwargs
    )


def integrate_batch(
    params: ProblemParams,
    t0: float,
    tend: float,
    initial: ArrayLike,
    variational: Sequence[Variational] = (),
    *,
    rtol: float | None = None,
    atol: float | None = None,
) -> NDArray[np.float64]:
    """
    Final states of many initial values integrated as one stacked system.

    Returns an array shaped (components, n). Intended for truncated scans, where
    no trajectory can escape; untruncated runs are not guarded here.
    """
    initial = np.atleast_2d(np.asarray(initial, dtype=float))
    scale = _time_scale(params, None)
    names = component_names(variational)
    y0 = _initial_state(params, t0, initial, variational, names, scale)
    sol = solve_ivp(
        _vector_field(params, names, scale),
        (t0 / scale, tend / scale),
        y0.ravel(),
        method="DOP853",
        rtol=settings.RTOL if rtol is None else rtol,
        atol=settings.ATOL if atol is None else atol,
        max_step=0.25 * min(1.0, params.epsilon) / scale,
    )
    if sol.status == -1:
        raise StepUnderflowError(sol.message, float(scale * sol.t[-1]), ())
    final = sol.y[:, -1].reshape(len(names), -1).copy()
    final[1::2] /= scale
    return final


def period_defect(trajectory: Trajectory, period: float = 2.0 * math.pi, n: int = 400) -> float:
    """max |u(t + period) − u(t)| over the first period of a trajectory spanning two."""
    lo, hi = trajectory.span
    if hi - lo < period:
        raise ValueError("trajectory is shorter than the period")
    t = np.linspace(lo, hi - period, n)
    return float(np.max(np.abs(trajectory.u(t + period) - trajectory.u(t))))
