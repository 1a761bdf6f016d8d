import logging
from fractions import Fraction

from chaos.construction import find_itineraries
from chaos.symbols import kneading_rule
from core.errors import IncomparableError
from core.problem import ProblemParams
from schema import BracketResult, KneadingVerdict, SymbolSequence

logger = logging.getLogger(__name__)


def bracket_of(result: BracketResult) -> tuple[Fraction, Fraction]:
    """Exact ends of the deepest interval of a construction."""
    last = result.steps[-1]
    return Fraction(last.lo), Fraction(last.hi)


def compare_results(first: BracketResult, second: BracketResult) -> str:
    """'>' or '<' for the two representatives; brackets must not overlap."""
    lo1, hi1 = bracket_of(first)
    lo2, hi2 = bracket_of(second)
    if lo1 <= hi2 and lo2 <= hi1:
        raise IncomparableError(
            f"incomparable: brackets of {first.sigma} and {second.sigma} overlap"
        )
    return ">" if lo1 > hi2 else "<"


def kneading_order(
    sigma1: SymbolSequence,
    sigma2: SymbolSequence,
    params: ProblemParams,
    *,
    workers: int | None = None,
) -> KneadingVerdict:
    """Construct both itineraries and check their α order against the kneading rules."""
    first, second = find_itineraries(params, [sigma1, sigma2], workers)
    observed = compare_results(first, second)
    predicted, prefix = kneading_rule(sigma1, sigma2)
    agrees = predicted == observed
    if not agrees:
        logger.warning(
            f"construction-path violation: α{sigma1.entries} {observed} α{sigma2.entries}, "
            f"kneading rules predict {predicted}"
        )
    return KneadingVerdict(
        sigma1=list(sigma1.entries),
        sigma2=list(sigma2.entries),
        prefix=prefix,
        predicted=predicted,
        observed=observed,
        agrees=agrees,
    )
