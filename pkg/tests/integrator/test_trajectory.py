import math

import numpy as np
import pytest

from core.problem import ProblemParams
from integrator import TerminalStatus, integrate_truncated, join_trajectories


@pytest.fixture
def quarter():
    params = ProblemParams(epsilon=1.0, lam=2.0)
    return integrate_truncated(params, 0.0, math.pi / 2.0, (0.4, 0.0))


def test_restricted_clips_to_span(quarter) -> None:
    part = quarter.restricted(0.2, 0.4)
    assert part.span == pytest.approx((0.2, 0.4))
    assert part.u(0.3) == pytest.approx(quarter.u(0.3))
    assert part.terminal == TerminalStatus.REACHED_TEND

    clipped = quarter.restricted(-1.0, 0.4)
    assert clipped.span[0] == 0.0


def test_antisymmetric_extension(quarter) -> None:
    centre = math.pi / 2.0
    full = quarter.antisymmetric_extension(centre)
    assert full.span == pytest.approx((0.0, math.pi))
    for t in (0.1, 0.6, 1.2):
        assert full.u(math.pi - t) == pytest.approx(-quarter.u(t), abs=1e-12)
        assert full.du(math.pi - t) == pytest.approx(quarter.du(t), abs=1e-12)


def test_even_extension(quarter) -> None:
    full = quarter.even_extension(0.0)
    assert full.span == pytest.approx((-math.pi / 2.0, math.pi / 2.0))
    assert full.u(-0.7) == pytest.approx(quarter.u(0.7), abs=1e-12)
    assert full.du(-0.7) == pytest.approx(-quarter.du(0.7), abs=1e-12)


def test_shifted(quarter) -> None:
    moved = quarter.shifted(math.pi, sign=-1.0)
    assert moved.span == pytest.approx((math.pi, 1.5 * math.pi))
    assert moved.u(math.pi + 0.5) == pytest.approx(-quarter.u(0.5), abs=1e-12)


def test_join_continues_the_solution(quarter) -> None:
    params = quarter.params
    tail = integrate_truncated(
        params, quarter.t_end, math.pi, (quarter.final(), quarter.final("du"))
    )
    whole = join_trajectories([quarter, tail])
    direct = integrate_truncated(params, 0.0, math.pi, (0.4, 0.0))
    t = np.linspace(0.0, math.pi, 7)
    np.testing.assert_allclose(whole.u(t), direct.u(t), atol=1e-8)
    assert whole.span == pytest.approx((0.0, math.pi))


def test_sample_rows(quarter) -> None:
    rows = quarter.sample(n=5)
    assert rows.shape == (5, 3)
    assert rows[0, 0] == 0.0
    assert rows[-1, 0] == pytest.approx(math.pi / 2.0)
    assert rows[0, 1] == pytest.approx(0.4)
