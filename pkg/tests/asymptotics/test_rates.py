import math

import numpy as np
import pytest

from asymptotics import Band, band_check, rate_regression, ratio_trend, suite_table
from asymptotics.rates import non_increasing
from core.errors import InsufficientSpreadError
from core.problem import ProblemParams
from schema import BandReport
from shooting import find_up

EPSILONS = [0.04, 0.03, 0.02, 0.015, 0.01]


def report(eps: float, e0: float) -> BandReport:
    return BandReport(
        solution="u1",
        branch="lower",
        c=0.0,
        d=math.pi,
        mu=0.3,
        epsilon=eps,
        e0=e0,
        e1=e0,
        M0=e0 / eps**2,
        M0_prime=e0 / eps**2,
        combined=(2.0 * e0 / eps**2 + 1.0) * eps**2,
    )


def test_rate_regression_recovers_power() -> None:
    errors = [3.0 * e**2 for e in EPSILONS]
    fit = rate_regression(EPSILONS, errors)
    assert fit.slope == pytest.approx(2.0, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-12)
    assert fit.r_value == pytest.approx(1.0)
    assert fit.points == 5


def test_rate_regression_needs_spread() -> None:
    with pytest.raises(InsufficientSpreadError):
        rate_regression([0.04, 0.03, 0.02], [1.0, 1.0, 1.0])
    with pytest.raises(InsufficientSpreadError):
        rate_regression([0.04, 0.035, 0.03, 0.02], [1.0, 1.0, 1.0, 1.0])


def test_rate_regression_input_checks() -> None:
    with pytest.raises(ValueError, match="errors"):
        rate_regression(EPSILONS, [1.0, 2.0])
    with pytest.raises(ValueError, match="positive"):
        rate_regression(EPSILONS, [1.0, 1.0, 0.0, 1.0, 1.0])


def test_ratio_trend() -> None:
    growing = ratio_trend(EPSILONS, [1.0, 2.0, 3.0, 4.0, 5.0])
    assert growing.tau == pytest.approx(1.0)
    assert not growing.bounded

    flat = ratio_trend(EPSILONS, [2.0] * 5)
    assert flat.tau == 0.0
    assert flat.bounded

    shrinking = ratio_trend(EPSILONS, [5.0, 4.0, 3.0, 2.0, 1.0])
    assert shrinking.bounded


def test_suite_table_orders_by_epsilon() -> None:
    reports = [report(e, 0.5 * e**2) for e in reversed(EPSILONS)]
    rows = suite_table(reports)
    assert [r.epsilon for r in rows] == EPSILONS
    assert rows[0].slope == pytest.approx(2.0)
    np.testing.assert_allclose([r.ratio0 for r in rows], 0.5)


def test_suite_table_without_spread() -> None:
    rows = suite_table([report(0.04, 1e-3), report(0.03, 5e-4)])
    assert all(r.slope is None for r in rows)


def test_non_increasing() -> None:
    assert non_increasing([1.0, 1.05, 0.9])
    assert not non_increasing([1.0, 1.2])


@pytest.mark.slow
def test_up_approaches_the_lower_branch_at_second_order() -> None:
    bands = []
    for eps in EPSILONS:
        up = find_up(ProblemParams(epsilon=eps, lam=2.0))
        bands.append(band_check(up.solution, Band.LOWER, (0.0, 0.5 * math.pi), 0.3, name="up"))
    fit = rate_regression(EPSILONS, [b.e0 for b in bands])
    derivative_fit = rate_regression(EPSILONS, [b.e1 / b.epsilon for b in bands])
    assert fit.slope == pytest.approx(2.0, abs=0.3)
    assert derivative_fit.slope == pytest.approx(1.0, abs=0.3)
