from chaos.certificate import certify_condition_A, epsilon_lambda
from chaos.construction import (
    Solved,
    construct_five_symbol,
    construct_itinerary,
    find_five_symbol_solution,
    find_itineraries,
    find_itinerary_solution,
)
from chaos.kneading import kneading_order
from chaos.spikes import SpikeFamily, build_spikes
from chaos.symbols import kneading_rule, symbols_from_five

__all__ = [
    "Solved",
    "SpikeFamily",
    "build_spikes",
    "certify_condition_A",
    "construct_five_symbol",
    "construct_itinerary",
    "epsilon_lambda",
    "find_five_symbol_solution",
    "find_itineraries",
    "find_itinerary_solution",
    "kneading_order",
    "kneading_rule",
    "symbols_from_five",
]
