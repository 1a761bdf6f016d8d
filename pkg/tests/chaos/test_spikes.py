import math

import numpy as np
import pytest

from chaos import build_spikes
from core.forcing import ForcingKind, ForcingSpec
from core.problem import ProblemParams


@pytest.fixture(scope="module")
def spikes():
    return build_spikes(ProblemParams(epsilon=0.1, lam=2.0), k_max=3)


def test_w0_support_and_anchor(spikes) -> None:
    assert spikes.s0 < 0.0 < spikes.S0
    assert spikes.S0 < math.pi / 2.0
    assert float(spikes.value(0, 0.0)) == pytest.approx(-math.sqrt(2.0), abs=1e-9)
    assert float(spikes.value(0, spikes.S0)) == pytest.approx(spikes.b, abs=1e-8)
    assert spikes.S0 == pytest.approx(-spikes.s0, abs=1e-6)


def test_odd_spikes_are_reflections(spikes) -> None:
    t = np.linspace(spikes.s0, spikes.S0, 11)[1:-1]
    np.testing.assert_allclose(spikes.value(1, t + math.pi), -spikes.value(0, t), atol=1e-12)
    np.testing.assert_allclose(spikes.value(2, t + 2.0 * math.pi), spikes.value(0, t), atol=1e-12)
    assert float(spikes.value(1, 0.0)) == -spikes.b


def test_records_alternate_parity(spikes) -> None:
    records = spikes.records()
    assert [r.index for r in records] == [0, 1, 2, 3]
    assert [r.parity for r in records] == ["down", "up", "down", "up"]
    assert records[2].s == pytest.approx(2.0 * math.pi + spikes.s0)


def test_barrier_curves(spikes) -> None:
    t = np.linspace(0.0, 2.0 * math.pi, 51)
    level = math.sqrt(2.0 / 3.0)
    assert np.all(spikes.g_plus(t) >= level)
    assert np.all(spikes.g_minus(t) <= -level)
    assert np.all(spikes.f_plus(t) <= spikes.b + 1e-8)
    columns = spikes.sample(t)
    assert set(columns) == {"w0", "w1", "w2", "w3", "f+", "f-", "g+", "g-"}
    assert np.isnan(columns["w0"][-1])


def test_spikes_need_half_antiperiodic_forcing() -> None:
    params = ProblemParams(
        epsilon=0.1, lam=2.0, forcing=ForcingSpec(kind=ForcingKind.COS_MINUS_SIN2)
    )
    with pytest.raises(ValueError, match="g\\(t \\+ π\\) = −g\\(t\\)"):
        build_spikes(params)


def test_flank_sits_on_the_s_side(spikes) -> None:
    level = math.sqrt(2.0 / 3.0)
    for k in range(4):
        t = spikes.flank(k)
        assert spikes.support(k)[0] < t < k * math.pi
        assert abs(float(spikes.value(k, t))) == pytest.approx(level, abs=1e-9)


def test_spikes_use_the_truncation_barrier() -> None:
    params = ProblemParams(epsilon=0.25, lam=2.0)
    family = build_spikes(params, k_max=1)
    assert family.b == params.barrier == 2.0
    assert float(family.value(0, family.S0)) == pytest.approx(2.0, abs=1e-8)
