import numpy as np
import pytest

from bifurcation import count_zeros, sweep, zeros_at
from bifurcation.sweep import _check_oscillation, _first_transition, pairing_defect
from core.errors import CountOscillationError
from core.problem import ProblemParams


def test_single_zero_for_negative_lambda() -> None:
    params = ProblemParams(epsilon=1.0, lam=-1.0)
    zeros = zeros_at(params, 200, workers=1)
    assert len(zeros) == 1
    zero = zeros[0]
    assert zero.g_slope == pytest.approx(zero.v_prime_pi, rel=1e-4)
    assert zero.v_prime_pi > 0


def test_first_transition() -> None:
    assert _first_transition([1, 1, 3, 5]) == 1
    assert _first_transition([1, 1, 1]) is None
    assert _first_transition([3, 1, 3]) == 1


def test_count_oscillation() -> None:
    lambdas = np.array([1.0, 1.02, 1.04, 1.06])
    _check_oscillation(lambdas, [1, 3, 3, 5], 0)
    with pytest.raises(CountOscillationError):
        _check_oscillation(lambdas, [1, 3, 1, 3], 0)


def test_pairing_defect_of_nothing() -> None:
    assert pairing_defect(ProblemParams(epsilon=1.0, lam=2.0), []) == 0.0


def test_sweep_without_transition() -> None:
    diagram = sweep(ProblemParams(epsilon=1.0, lam=-1.0), [-1.0, -0.5], points=200, workers=1)
    assert [s.count for s in diagram.slices] == [1, 1]
    assert diagram.lambda_b is None
    assert diagram.transition is None


@pytest.mark.slow
def test_five_zeros_above_the_fold() -> None:
    assert count_zeros(ProblemParams(epsilon=1.0, lam=2.0), workers=1) == 5


@pytest.mark.slow
def test_lambda_b_at_unit_epsilon() -> None:
    diagram = sweep(
        ProblemParams(epsilon=1.0, lam=1.0), [0.99, 1.01, 1.03, 1.05], points=300, workers=1
    )
    assert diagram.lambda_b is not None
    assert 1.013 <= diagram.lambda_b <= 1.033
    assert diagram.transition is not None and diagram.transition[0] == 1
    assert diagram.pairing_defect is not None and diagram.pairing_defect < 1e-6
