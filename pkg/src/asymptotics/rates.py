import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.stats import kendalltau, linregress

from core.errors import InsufficientSpreadError
from schema import BandReport, RateFit, SuiteRow

logger = logging.getLogger(__name__)

MIN_POINTS = 4
MIN_SPREAD = 4.0
TREND_NOISE = 0.4


def rate_regression(epsilons: Sequence[float], errors: Sequence[float]) -> RateFit:
    """Least-squares slope of log error against log ε."""
    eps = np.asarray(epsilons, dtype=float)
    err = np.asarray(errors, dtype=float)
    if eps.size != err.size:
        raise ValueError(f"{eps.size} ε-values but {err.size} errors")
    if eps.size < MIN_POINTS or eps.max() / eps.min() < MIN_SPREAD:
        raise InsufficientSpreadError(
            f"insufficient spread: need {MIN_POINTS} ε-values spanning a factor {MIN_SPREAD}, "
            f"got {eps.size} spanning {eps.max() / eps.min():.3g}"
        )
    if np.any(err <= 0):
        raise ValueError("errors must be positive for a log–log fit")
    fit = linregress(np.log(eps), np.log(err))
    return RateFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_value=float(fit.rvalue),
        stderr=float(fit.stderr),
        points=int(eps.size),
    )


@dataclass(frozen=True)
class Trend:
    tau: float
    pvalue: float
    bounded: bool


def ratio_trend(epsilons: Sequence[float], ratios: Sequence[float]) -> Trend:
    """
    Kendall τ of fitted constants against −log ε.

    A ratio that grows as ε shrinks gives τ near 1; anything up to
    TREND_NOISE is read as bounded.
    """
    result = kendalltau(-np.log(np.asarray(epsilons, dtype=float)), np.asarray(ratios))
    tau = float(result.statistic) if math.isfinite(result.statistic) else 0.0
    bounded = tau <= TREND_NOISE
    if not bounded:
        logger.warning(f"fitted constants grow as ε decreases: Kendall τ = {tau:.3f}")
    return Trend(tau=tau, pvalue=float(result.pvalue), bounded=bounded)


def suite_table(reports: Sequence[BandReport]) -> list[SuiteRow]:
    """Rows epsilon, e0, e1, ratio0, ratio1 plus the suite's e0 slope when it can be fitted."""
    ordered = sorted(reports, key=lambda r: r.epsilon, reverse=True)
    try:
        slope: float | None = rate_regression(
            [r.epsilon for r in ordered], [r.e0 for r in ordered]
        ).slope
    except (InsufficientSpreadError, ValueError):
        slope = None
    return [
        SuiteRow(
            epsilon=r.epsilon,
            e0=r.e0,
            e1=r.e1,
            ratio0=r.M0,
            ratio1=r.M0_prime,
            slope=slope,
        )
        for r in ordered
    ]


def non_increasing(values: Sequence[float], allowance: float = 0.1) -> bool:
    """Each value at most (1 + allowance) times its predecessor."""
    return all(b <= (1.0 + allowance) * a for a, b in zip(values, values[1:]))
