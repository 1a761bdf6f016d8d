"""
Symbolic descriptions of an orbit and the order they induce on α.

An orbit started at (α, 0) with α ∈ (−b, ᾱ) is read either as its sequence of
first spike crossings, closed by how it ends (escape up, escape down or
survival to the horizon), or as a five-symbol word with one letter per period.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import IntEnum

from schema import FiveSymbolSequence, SymbolSequence


class Ending(IntEnum):
    """Rank of how a sequence ends; a higher rank means a larger α."""

    ESCAPE_DOWN = 0
    SURVIVE = 1
    ESCAPE_UP = 2


@dataclass(frozen=True)
class ItineraryEvent:
    """A first crossing of spike `index` at time t, or the ending of the orbit."""

    t: float
    index: int | None = None
    ending: Ending | None = None

    @property
    def rank(self) -> int:
        """even spike or escape up: 2, survival: 1, odd spike or escape down: 0."""
        if self.index is not None:
            return 0 if self.index % 2 else 2
        assert self.ending is not None
        return int(self.ending)

    @property
    def x(self) -> float:
        """Position used to order two events of the same rank."""
        return self.index * math.pi if self.index is not None else self.t

    def same_as(self, other: "ItineraryEvent") -> bool:
        if self.index is not None or other.index is not None:
            return self.index == other.index
        return self.ending == other.ending == Ending.SURVIVE


def spike(index: int, t: float | None = None) -> ItineraryEvent:
    return ItineraryEvent(t=index * math.pi if t is None else t, index=index)


SURVIVE = ItineraryEvent(t=float("inf"), ending=Ending.SURVIVE)


def event_order(a: ItineraryEvent, b: ItineraryEvent) -> int:
    """
    Sign of α(a) − α(b) for two orbits first differing at events a and b.

    Even events sit above odd ones. Among even events a later one means a
    smaller α; among odd events a later one means a larger α.
    """
    if a.rank != b.rank:
        return 1 if a.rank > b.rank else -1
    if a.rank == int(Ending.SURVIVE) or a.x == b.x:
        return 0
    later = 1 if a.x > b.x else -1
    return -later if a.rank == 2 else later


def target_events(sigma: SymbolSequence) -> list[ItineraryEvent]:
    return [spike(k) for k in sigma.entries] + [SURVIVE]


def compare_events(
    events: list[ItineraryEvent],
    target: list[ItineraryEvent],
    flank: Callable[[int], float] | None = None,
) -> tuple[int, int]:
    """
    (sign of α − α_target, length of the matched prefix).

    With flank, a matched first crossing of spike k at or after flank(k) ends
    the comparison on the side of the S_k end of the support: below for even k,
    above for odd k. Only crossings between s_k and flank(k) carry on to the
    next event.
    """
    for depth, (e, t) in enumerate(zip(events, target)):
        if not e.same_as(t):
            return event_order(e, t), depth
        if flank is not None and e.index is not None and e.t >= flank(e.index):
            return (1 if e.index % 2 else -1), depth + 1
    return 0, len(target)


def kneading_rule(sigma1: SymbolSequence, sigma2: SymbolSequence) -> tuple[str, int]:
    """
    The order of α(Σ₁) and α(Σ₂) predicted from the itineraries alone.

    Returns (">", "<" or "=", common prefix length). A sequence that stops
    where the other continues is read as surviving past its last spike.
    """
    sign, prefix = compare_events(target_events(sigma1), target_events(sigma2))
    return {1: ">", -1: "<", 0: "="}[sign], prefix


def symbols_from_five(omega: FiveSymbolSequence) -> SymbolSequence:
    """The spike itinerary of a five-symbol word: 1, 2 ↦ 2k − 1; 4, 5 ↦ 2k; 3 ↦ none."""
    entries = []
    for k, letter in enumerate(omega.entries, start=1):
        if letter in (1, 2):
            entries.append(2 * k - 1)
        elif letter in (4, 5):
            entries.append(2 * k)
    return SymbolSequence(entries=tuple(entries))


# Letters of a five-symbol word ordered by height; an escape is recorded as a
# letter below 1 or above 5 at the period where it happens.
ESCAPED_DOWN = 0
ESCAPED_UP = 6


def compare_words(word: list[int], target: FiveSymbolSequence) -> tuple[int, int]:
    """Lexicographic comparison by height: (sign of α − α_target, matched prefix)."""
    for depth, (w, t) in enumerate(zip(word, target.entries)):
        if w != t:
            return (1 if w > t else -1), depth
    if len(word) < len(target.entries):
        raise ValueError(f"word {word} is shorter than the target {target.entries}")
    return 0, len(target.entries)
