import math
from fractions import Fraction

import pytest

from chaos import kneading_rule, symbols_from_five
from chaos.charts import root_chart
from chaos.symbols import (
    ESCAPED_UP,
    SURVIVE,
    Ending,
    ItineraryEvent,
    compare_events,
    compare_words,
    spike,
    target_events,
)
from schema import FiveSymbolSequence, SymbolSequence


def seq(*entries: int) -> SymbolSequence:
    return SymbolSequence(entries=entries)


def test_symbols_from_five() -> None:
    assert symbols_from_five(FiveSymbolSequence(entries=(4, 3, 1))) == seq(2, 5)
    assert symbols_from_five(FiveSymbolSequence(entries=(3, 3))) == seq()
    assert symbols_from_five(FiveSymbolSequence(entries=(1, 2))) == seq(1, 3)


def test_sequence_validation() -> None:
    with pytest.raises(ValueError, match="at least 2"):
        seq(1, 2)
    with pytest.raises(ValueError, match="positive"):
        seq(0, 3)
    with pytest.raises(ValueError, match="a 3 must separate"):
        FiveSymbolSequence(entries=(1, 4))
    assert SymbolSequence.parse("1, 3") == seq(1, 3)
    assert SymbolSequence.parse("") == seq()


@pytest.mark.parametrize(
    ("first", "second", "expected"),
    [
        (seq(1, 3), seq(1, 5), ("<", 1)),
        (seq(2), seq(4), (">", 0)),
        (seq(1), seq(1, 3), (">", 1)),
        (seq(1), seq(2), ("<", 0)),
        (seq(), seq(2), ("<", 0)),
        (seq(), seq(1), (">", 0)),
        (seq(1, 3), seq(1, 3), ("=", 3)),
    ],
)
def test_kneading_rule(first, second, expected) -> None:
    assert kneading_rule(first, second) == expected


def test_compare_words() -> None:
    target = FiveSymbolSequence(entries=(4, 3, 1))
    assert compare_words([4, 3, 1], target) == (0, 3)
    assert compare_words([4, 2], target) == (-1, 1)
    assert compare_words([ESCAPED_UP], target) == (1, 0)
    with pytest.raises(ValueError, match="shorter"):
        compare_words([4, 3], target)


def test_root_chart_is_exact() -> None:
    chart = root_chart(2.0, -1.5)
    assert chart.alpha(Fraction(0)) == -2
    assert chart.alpha(Fraction(1, 2)) == Fraction(-7, 4)
    assert chart.state(Fraction(1)) == (-1.5, 0.0)


def test_compare_events_stops_past_the_flank() -> None:
    def flank(k: int) -> float:
        return k * math.pi - 0.3

    target = target_events(seq(1, 4))
    near_s = [spike(1, math.pi - 0.5), spike(4, 4.0 * math.pi - 0.5), SURVIVE]
    assert compare_events(near_s, target, flank) == (0, 3)
    past_odd = [spike(1, math.pi - 0.1), ItineraryEvent(t=3.2, ending=Ending.ESCAPE_DOWN)]
    assert compare_events(past_odd, target, flank) == (1, 1)
    assert compare_events(past_odd, target) == (-1, 1)
    past_even = [spike(1, math.pi - 0.5), spike(4, 4.0 * math.pi + 0.2), SURVIVE]
    assert compare_events(past_even, target, flank) == (-1, 2)
    assert compare_events(past_even, target) == (0, 3)
