"""
Nested-interval construction of solutions with a prescribed spike itinerary
or five-symbol word.

The α-range (−b, ᾱ) is bisected on the order the symbolic reading of an orbit
induces on α (see chaos.symbols). An itinerary carries on past spike σ_n only
for orbits that first meet w_σn between s_σn and the flank where |w_σn| = √(λ/3);
later first crossings are ranked with the orbits beyond S_σn.

Once a bracket is narrower than CHART_MIN_WIDTH the construction moves to a
child chart further along in time, so the bisection keeps resolving orbits that
only separate much later.
"""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from chaos.charts import Chart, reanchor, root_chart
from chaos.spikes import SpikeFamily, build_spikes
from chaos.symbols import (
    ESCAPED_DOWN,
    ESCAPED_UP,
    SURVIVE,
    Ending,
    ItineraryEvent,
    compare_events,
    compare_words,
    spike,
    symbols_from_five,
    target_events,
)
from core.errors import BracketCollapseError, PatternAmbiguityError
from core.problem import ProblemParams
from core.settings import settings
from integrator import Trajectory, crossing_times
from schema import BracketResult, BracketStep, EventRecord, FiveSymbolSequence, SymbolSequence

logger = logging.getLogger(__name__)

COLLAPSE_WIDTH = Fraction(1, 10**14)
WINDOW_SAMPLES = 400

Evaluation = Callable[[Trajectory], tuple[int, int]]


def spike_crossings(
    orbit: Trajectory, spikes: SpikeFamily, indices: range
) -> dict[int, list[EventRecord]]:
    """Crossings of each spike in indices with the orbit, restricted to t > 0."""
    t_end = orbit.span[1]
    found: dict[int, list[EventRecord]] = {}
    for k in indices:
        lo, hi = spikes.support(k)
        lo, hi = max(lo, 0.0), min(hi, t_end)
        if hi <= lo:
            continue
        hits = crossing_times(orbit, spikes.curve(k), f"w{k}", t_range=(lo, hi))
        hits = [h for h in hits if h.t > 0.0]
        if hits:
            found[k] = hits
    return found


def ending_of(orbit: Trajectory) -> ItineraryEvent:
    if orbit.stop_label == "b+":
        return ItineraryEvent(t=orbit.span[1], ending=Ending.ESCAPE_UP)
    if orbit.stop_label == "b-":
        return ItineraryEvent(t=orbit.span[1], ending=Ending.ESCAPE_DOWN)
    return SURVIVE


def spikes_within(horizon: float) -> range:
    return range(0, math.ceil(horizon / math.pi) + 2)


def itinerary_of(orbit: Trajectory, spikes: SpikeFamily, horizon: float) -> list[ItineraryEvent]:
    """First crossings of each spike in time order, closed by the orbit's ending."""
    crossings = spike_crossings(orbit, spikes, spikes_within(horizon))
    events = sorted((spike(k, hits[0].t) for k, hits in crossings.items()), key=lambda e: e.t)
    return events + [ending_of(orbit)]


def _window(orbit: Trajectory, lo: float, hi: float) -> np.ndarray:
    t = np.linspace(lo, min(hi, orbit.span[1]), WINDOW_SAMPLES)[1:-1]
    return t[t > 0.0]


def word_of(orbit: Trajectory, spikes: SpikeFamily, n: int) -> list[int]:
    """
    The first n letters of the orbit's five-symbol word.

    A period the orbit leaves through u = ±b before its letter is decided gets
    ESCAPED_DOWN or ESCAPED_UP and ends the word. Letters 1, 2, 4 and 5 need
    both crossings of their spike; an orbit that enters a spike and escapes
    before crossing it again reads as the escape.
    """
    t_end = orbit.span[1]
    escaped = {"b+": ESCAPED_UP, "b-": ESCAPED_DOWN}.get(orbit.stop_label or "")
    crossings = spike_crossings(orbit, spikes, range(1, 2 * n + 1))
    word: list[int] = []
    for k in range(1, n + 1):
        odd, even = 2 * k - 1, 2 * k
        if escaped is not None and t_end < spikes.support(odd)[1] and odd not in crossings:
            word.append(escaped)
            break
        if odd in crossings:
            t = _window(orbit, (2 * k - 2) * math.pi, 2 * k * math.pi)
            if escaped is not None and len(crossings[odd]) < 2:
                letter = escaped
            elif t.size and np.any(orbit.u(t) > spikes.g_minus(t)):
                letter = 2
            elif escaped is not None and t_end < 2 * k * math.pi:
                letter = escaped
            else:
                letter = 1
        elif escaped is not None and t_end < spikes.support(even)[1]:
            letter = escaped
        elif even in crossings:
            t = _window(orbit, (2 * k - 1) * math.pi, (2 * k + 1) * math.pi)
            if escaped is not None and len(crossings[even]) < 2:
                letter = escaped
            elif t.size and np.any(orbit.u(t) < spikes.g_plus(t)):
                letter = 4
            elif escaped is not None and t_end < (2 * k + 1) * math.pi:
                letter = escaped
            else:
                letter = 5
        else:
            letter = 3
        word.append(letter)
        if letter in (ESCAPED_DOWN, ESCAPED_UP):
            break
    return word


@dataclass(frozen=True)
class Construction:
    chart: Chart
    lo: Fraction
    hi: Fraction
    s: Fraction
    orbit: Trajectory
    steps: list[BracketStep]

    @property
    def alpha(self) -> Fraction:
        return self.chart.alpha(self.s)

    @property
    def width(self) -> Fraction:
        return self.chart.alpha(self.hi) - self.chart.alpha(self.lo)


def _step(chart: Chart, lo: Fraction, hi: Fraction, depth: int) -> BracketStep:
    a, b = chart.alpha(lo), chart.alpha(hi)
    return BracketStep(depth=depth, chart=chart.index, lo=str(a), hi=str(b), width=float(b - a))


def nested_bisection(
    params: ProblemParams,
    spikes: SpikeFamily,
    evaluate: Evaluation,
    horizon: float,
    target: tuple[int, ...],
) -> Construction:
    """
    Bisect (−b, ᾱ) through a chain of charts until evaluate reports a match.

    evaluate returns (sign of α − α_target, matched prefix length); the ends of
    the root chart are taken as −1 at −b and +1 at ᾱ without evaluation.
    """
    chart = root_chart(spikes.b, spikes.alpha_bar)
    lo, hi = Fraction(0), Fraction(1)
    lo_orbit: Trajectory | None = None
    hi_orbit: Trajectory | None = None
    lo_depth = hi_depth = 0
    steps: list[BracketStep] = []
    for _ in range(64 * settings.CHART_MAX_DEPTH):
        mid = (lo + hi) / 2
        orbit = chart.orbit(params, spikes.b, mid, horizon)
        sign, depth = evaluate(orbit)
        if sign == 0:
            steps.append(_step(chart, lo, hi, len(target)))
            return Construction(chart, lo, hi, mid, orbit, steps)
        if sign > 0:
            hi, hi_orbit, hi_depth = mid, orbit, depth
        else:
            lo, lo_orbit, lo_depth = mid, orbit, depth
        steps.append(_step(chart, lo, hi, min(lo_depth, hi_depth)))
        if hi - lo < settings.CHART_MIN_WIDTH and lo_orbit is not None and hi_orbit is not None:
            child = reanchor(params, chart, lo, hi, lo_orbit, hi_orbit)
            if child is not None:
                if child.index > settings.CHART_MAX_DEPTH:
                    raise BracketCollapseError(
                        f"more than {settings.CHART_MAX_DEPTH} charts",
                        target[: min(lo_depth, hi_depth)],
                    )
                logger.info(
                    f"chart {child.index} at t={child.t:.6g}, "
                    f"prefix {target[: min(lo_depth, hi_depth)]}"
                )
                chart, lo, hi = child, Fraction(0), Fraction(1)
                continue
        if hi - lo < COLLAPSE_WIDTH:
            raise BracketCollapseError(
                f"interval narrower than 1e-14 in chart {chart.index} at t={chart.t:.6g}",
                target[: min(lo_depth, hi_depth)],
            )
    raise BracketCollapseError("bisection limit reached", target[: min(lo_depth, hi_depth)])


def _default_spikes(
    params: ProblemParams, horizon: float, spikes: SpikeFamily | None
) -> SpikeFamily:
    k_max = spikes_within(horizon)[-1]
    if spikes is not None and spikes.k_max >= k_max:
        return spikes
    return build_spikes(params, None if spikes is None else spikes.alpha_bar, k_max)


def _result(
    params: ProblemParams,
    spikes: SpikeFamily,
    built: Construction,
    sigma: SymbolSequence,
    omega: FiveSymbolSequence | None,
    horizon: float,
    indices: range,
    verified: bool,
) -> BracketResult:
    crossings = spike_crossings(built.orbit, spikes, indices)
    records = sorted((r for hits in crossings.values() for r in hits), key=lambda r: r.t)
    tangential = [r for r in records if r.tangential]
    if tangential:
        raise PatternAmbiguityError(
            f"pattern ambiguity: tangential crossing of {tangential[0].label} at "
            f"t={tangential[0].t:.6g}; re-run with a tighter tolerance"
        )
    crossed = sorted(crossings)
    if omega is None:
        verified = verified and crossed == list(sigma.entries)
    else:
        verified = verified and [k for k in crossed if k <= 2 * len(omega.entries)] == list(
            sigma.entries
        )
    alpha = built.alpha
    logger.info(
        f"itinerary {sigma.entries} at ε={params.epsilon}: α≈{float(alpha):.15g}, "
        f"width {float(built.width):.3e}, {len(built.steps)} steps, verified={verified}"
    )
    return BracketResult(
        params=params,
        sigma=list(sigma.entries),
        omega=None if omega is None else list(omega.entries),
        alpha_bar=spikes.alpha_bar,
        horizon=horizon,
        steps=built.steps,
        alpha=str(alpha),
        alpha_float=float(alpha),
        width=float(built.width),
        crossings=records,
        crossed=crossed,
        verified=verified,
    )


def default_horizon(sigma: SymbolSequence) -> float:
    """(σ_last + 2)π, and 2π for the empty itinerary."""
    last = sigma.entries[-1] if sigma.entries else 0
    return (last + 2) * math.pi


@dataclass(frozen=True)
class Solved:
    """A bracket result with the spike family and the representative orbit it was read from."""

    result: BracketResult
    spikes: SpikeFamily
    orbit: Trajectory


def construct_itinerary(
    params: ProblemParams,
    sigma: SymbolSequence,
    horizon: float | None = None,
    *,
    spikes: SpikeFamily | None = None,
) -> Solved:
    """
    α whose orbit crosses exactly the spikes listed in sigma on [0, horizon],
    in order, and then stays in |u| < b up to the horizon.
    """
    minimum = default_horizon(sigma)
    horizon = minimum if horizon is None else horizon
    if horizon < minimum:
        raise ValueError(f"horizon {horizon} is shorter than (σ_last + 2)π = {minimum}")
    params = params.evolve(truncate=False)
    spikes = _default_spikes(params, horizon, spikes)
    target = target_events(sigma)

    def evaluate(orbit: Trajectory) -> tuple[int, int]:
        return compare_events(itinerary_of(orbit, spikes, horizon), target, spikes.flank)

    built = nested_bisection(params, spikes, evaluate, horizon, sigma.entries)
    survived = built.orbit.stop_label is None
    result = _result(params, spikes, built, sigma, None, horizon, spikes_within(horizon), survived)
    return Solved(result, spikes, built.orbit)


def find_itinerary_solution(
    params: ProblemParams,
    sigma: SymbolSequence,
    horizon: float | None = None,
    *,
    spikes: SpikeFamily | None = None,
) -> BracketResult:
    return construct_itinerary(params, sigma, horizon, spikes=spikes).result


def construct_five_symbol(
    params: ProblemParams,
    omega: FiveSymbolSequence,
    horizon: float | None = None,
    *,
    spikes: SpikeFamily | None = None,
) -> Solved:
    """
    α whose orbit reads omega letter by letter: per period k, two crossings of
    w_{2k−1} (letters 1, 2), of w_{2k} (letters 4, 5) or of neither (3), with
    g₋ and g₊ telling 1 from 2 and 4 from 5.
    """
    n = len(omega.entries)
    minimum = (2 * n + 2) * math.pi
    horizon = minimum if horizon is None else horizon
    if horizon < minimum:
        raise ValueError(f"horizon {horizon} is shorter than (2n + 2)π = {minimum}")
    params = params.evolve(truncate=False)
    spikes = _default_spikes(params, horizon, spikes)

    def evaluate(orbit: Trajectory) -> tuple[int, int]:
        return compare_words(word_of(orbit, spikes, n), omega)

    built = nested_bisection(params, spikes, evaluate, horizon, omega.entries)
    matched = word_of(built.orbit, spikes, n) == list(omega.entries)
    sigma = symbols_from_five(omega)
    result = _result(params, spikes, built, sigma, omega, horizon, range(0, 2 * n + 1), matched)
    return Solved(result, spikes, built.orbit)


def find_five_symbol_solution(
    params: ProblemParams,
    omega: FiveSymbolSequence,
    horizon: float | None = None,
    *,
    spikes: SpikeFamily | None = None,
) -> BracketResult:
    return construct_five_symbol(params, omega, horizon, spikes=spikes).result


def _construct(params: ProblemParams, entries: tuple[int, ...]) -> BracketResult:
    return find_itinerary_solution(params, SymbolSequence(entries=entries))


def find_itineraries(
    params: ProblemParams, sigmas: list[SymbolSequence], workers: int | None = None
) -> list[BracketResult]:
    """Independent constructions, in order, optionally over a process pool."""
    workers = settings.WORKER_COUNT if workers is None else workers
    entries = [s.entries for s in sigmas]
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_construct, [params] * len(entries), entries))
    return [_construct(params, e) for e in entries]
