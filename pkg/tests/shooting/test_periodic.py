import math

import pytest

from core.problem import ProblemParams
from schema import Classification
from shooting import comparison_check, find_periodic_all
from shooting.periodic import in_band


def test_scan_range_must_cover_barrier() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    with pytest.raises(ValueError, match="scan range"):
        find_periodic_all(params, lo=0.0)


def test_single_solution_for_negative_lambda() -> None:
    params = ProblemParams(epsilon=1.0, lam=-1.0)
    found = find_periodic_all(params, points=200, workers=1)
    assert len(found.results) == 1
    only = found.results[0]
    assert abs(only.residual) < 1e-8
    report = found.report()
    assert report.solutions[0].alpha == only.alpha


def test_comparison_argument_checks() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    with pytest.raises(ValueError, match="α₁ < α₂ < 0"):
        comparison_check(params, -0.5, -1.0)
    with pytest.raises(ValueError, match="T must lie"):
        comparison_check(params, -1.5, -1.0, T=2.0)


def test_comparison_orders_nonpositive_solutions() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    result = comparison_check(params, -1.7, -1.6, T=0.5)
    assert result.ordered
    assert result.min_gap > 0


@pytest.mark.slow
def test_five_solutions_at_unit_epsilon() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    found = find_periodic_all(params, points=400, workers=1)
    classes = [r.classification for r in found.results]
    assert classes == [
        Classification.U1,
        Classification.U2,
        Classification.U3_UP,
        Classification.U4,
        Classification.U5,
    ]
    alphas = [r.alpha for r in found.results]
    assert alphas == sorted(alphas)
    assert all(abs(r.residual) < 1e-8 for r in found.results)
    assert in_band(found.of_class(Classification.U1)[0].solution, 2.0, -1)
    assert in_band(found.of_class(Classification.U5)[0].solution, 2.0, 1)
    for defect in found.pairing_defects.values():
        assert defect < 1e-6


@pytest.mark.slow
def test_lowest_solution_by_collocation() -> None:
    params = ProblemParams(epsilon=0.05, lam=2.0)
    found = find_periodic_all(params)
    u1 = found.of_class(Classification.U1)[0]
    assert u1.method == "collocation"
    assert in_band(u1.solution, 2.0, -1)
    assert found.pairing_defects["u5+u1"] < 1e-8
    assert len(found.results) == 5
    assert math.isfinite(u1.alpha)
