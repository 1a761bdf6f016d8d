import math

import numpy as np
import pytest

from chaos import (
    build_spikes,
    construct_five_symbol,
    construct_itinerary,
    find_five_symbol_solution,
    find_itinerary_solution,
    kneading_order,
)
from chaos.construction import default_horizon, spike_crossings, word_of
from chaos.symbols import ESCAPED_DOWN
from core.problem import ProblemParams
from integrator import TerminalStatus, Trajectory, extrema_ladder
from schema import FiveSymbolSequence, SymbolSequence

PARAMS = ProblemParams(epsilon=0.25, lam=2.0)


@pytest.fixture(scope="module")
def spikes():
    return build_spikes(ProblemParams(epsilon=0.1, lam=2.0), k_max=4)


def polyline(knots: list[float], values: list[float], stop_label: str | None = None) -> Trajectory:
    def dense(t):
        t_arr = np.asarray(t, dtype=float)
        u = np.interp(t_arr, knots, values)
        i = np.clip(np.searchsorted(knots, t_arr, side="right") - 1, 0, len(knots) - 2)
        du = (np.asarray(values)[i + 1] - np.asarray(values)[i]) / (
            np.asarray(knots)[i + 1] - np.asarray(knots)[i]
        )
        return np.array([u, du])

    t = np.linspace(knots[0], knots[-1], 4001)
    return Trajectory(
        params=ProblemParams(epsilon=0.1, lam=2.0),
        t0=knots[0],
        t=t,
        y=dense(t),
        events=(),
        terminal=TerminalStatus.REACHED_TEND if stop_label is None else TerminalStatus.EVENT_STOP,
        dense=dense,
        stop_label=stop_label,
    )


def test_default_horizon() -> None:
    assert default_horizon(SymbolSequence(entries=(1, 3))) == pytest.approx(5.0 * math.pi)
    assert default_horizon(SymbolSequence()) == pytest.approx(2.0 * math.pi)


def test_horizon_too_short() -> None:
    with pytest.raises(ValueError, match="shorter than"):
        find_itinerary_solution(PARAMS, SymbolSequence(entries=(1, 3)), horizon=math.pi)
    with pytest.raises(ValueError, match="shorter than"):
        find_five_symbol_solution(PARAMS, FiveSymbolSequence(entries=(4, 3, 1)), horizon=math.pi)


@pytest.mark.slow
def test_itinerary_one_three() -> None:
    solved = construct_itinerary(PARAMS, SymbolSequence(entries=(1, 3)))
    result = solved.result
    assert result.verified
    assert result.crossed == [1, 3]
    assert result.steps
    assert -solved.spikes.b < result.alpha_float < result.alpha_bar
    assert solved.orbit.stop_label is None
    assert extrema_ladder(solved.orbit, 1e-6, math.pi - 1e-6).is_decreasing()


@pytest.mark.slow
def test_empty_itinerary_crosses_nothing() -> None:
    result = find_itinerary_solution(PARAMS, SymbolSequence())
    assert result.verified
    assert result.crossed == []


@pytest.mark.slow
def test_kneading_order_agrees() -> None:
    verdict = kneading_order(
        SymbolSequence(entries=(1, 3)), SymbolSequence(entries=(1, 5)), PARAMS, workers=1
    )
    assert verdict.predicted == "<"
    assert verdict.agrees


def test_word_needs_both_crossings_of_a_spike(spikes) -> None:
    deep = polyline([0.0, 4.0 * math.pi + 1.0], [-1.6, -1.6])
    assert word_of(deep, spikes, 2) == [1, 1]

    # enters w1 on its rising flank, then leaves through u = −b inside the support
    entered = polyline([0.0, math.pi - 0.05, math.pi - 0.025], [-0.5, -1.5, -2.0], "b-")
    assert [len(h) for h in spike_crossings(entered, spikes, range(1, 3)).values()] == [1]
    assert word_of(entered, spikes, 1) == [ESCAPED_DOWN]


@pytest.mark.slow
@pytest.mark.parametrize(
    ("first", "second", "expected"),
    [((2,), (1,), ">"), ((4,), (2,), "<"), ((3,), (1,), ">")],
)
def test_kneading_on_singletons(first, second, expected) -> None:
    verdict = kneading_order(
        SymbolSequence(entries=first), SymbolSequence(entries=second), PARAMS, workers=1
    )
    assert verdict.predicted == expected
    assert verdict.agrees


@pytest.mark.slow
def test_five_symbol_threes_cross_nothing() -> None:
    solved = construct_five_symbol(PARAMS, FiveSymbolSequence(entries=(3, 3)))
    assert solved.result.verified
    assert solved.result.omega == [3, 3]
    assert solved.result.crossed == []
    assert word_of(solved.orbit, solved.spikes, 2) == [3, 3]
