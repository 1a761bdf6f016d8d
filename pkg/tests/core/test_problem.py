import math

import numpy as np
import pytest

from core.problem import ProblemParams, default_barrier


def test_default_barrier_keeps_closed_form_when_it_clears() -> None:
    """b(λ) = √(λ + 1/(2λ)) is used only when b³ − λb − sup|g| > 0."""
    for lam in (0.1, 0.2):
        b = math.sqrt(lam + 1.0 / (2.0 * lam))
        assert b**3 - lam * b - 1.0 > 0
        assert default_barrier(lam) == pytest.approx(b)


def test_default_barrier_doubles_otherwise() -> None:
    assert default_barrier(2.0) == 2.0
    assert default_barrier(10.0) == 4.0
    assert default_barrier(-1.0) == 1.0
    for lam in (-2.0, 0.5, 1.0, 2.0, 3.0, 6.0, 10.0):
        b = default_barrier(lam)
        assert b**3 - lam * b - 1.0 > 0


def test_lambda_alias_and_evolve() -> None:
    params = ProblemParams.model_validate({"epsilon": 0.5, "lambda": 2.0})
    assert params.lam == 2.0
    moved = params.evolve(lam=3.0)
    assert moved.lam == 3.0
    assert moved.epsilon == 0.5
    assert params.lam == 2.0
    assert moved.barrier == default_barrier(3.0)


def test_epsilon_must_be_positive() -> None:
    with pytest.raises(ValueError):
        ProblemParams(epsilon=0.0, lam=1.0)


def test_truncation_needs_a_clearing_barrier() -> None:
    with pytest.raises(ValueError, match="does not satisfy"):
        ProblemParams(epsilon=1.0, lam=2.0, truncate=True, b=1.0)


def test_truncated_nonlinearity_is_frozen_outside_barrier() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0).truncated()
    assert params.truncate
    b = params.barrier
    u = np.array([-3.0 * b, -b, 0.3, b, 5.0 * b])
    out = params.nonlinearity(u)
    assert out[0] == pytest.approx(out[1])
    assert out[-1] == pytest.approx(out[-2])
    assert out[2] == pytest.approx(0.3**3 - 2.0 * 0.3)


def test_acceleration_scales_with_epsilon() -> None:
    params = ProblemParams(epsilon=0.5, lam=2.0)
    a = params.acceleration(0.0, 1.0)
    assert a == pytest.approx((1.0 - 2.0 + 1.0) / 0.25)
    assert params.acceleration(math.pi, 0.0) == pytest.approx(-1.0 / 0.25)
