import math

import numpy as np
import pytest

from core.constants import compute_lambda0
from core.equilibria import EquilibriumBranches, energy_H
from core.problem import ProblemParams
from schema import Classification
from shooting import find_m_maxima, find_upwind
from shooting.collocation import (
    BASE_NODES,
    LAYER_HALF_WIDTH,
    LAYER_NODES,
    epsilon_path,
    layer_mesh,
)
from shooting.ladder import interleaved
from shooting.layered import upwind_beta_window


def test_m_must_be_positive() -> None:
    params = ProblemParams(epsilon=0.1, lam=3.0)
    with pytest.raises(ValueError, match="m must be positive"):
        find_m_maxima(params, 0)
    with pytest.raises(ValueError, match="m must be positive"):
        find_upwind(params, 0)


def test_m_maxima_need_lambda_above_Lambda() -> None:
    params = ProblemParams(epsilon=0.1, lam=compute_lambda0() + 1e-3)
    with pytest.raises(ValueError, match="need λ > Λ"):
        find_m_maxima(params, 1)


def test_upwind_needs_lambda_above_lambda0() -> None:
    params = ProblemParams(epsilon=0.1, lam=1.0)
    with pytest.raises(ValueError, match="need λ > λ₀"):
        find_upwind(params, 1)


def test_layer_mesh_covers_interval() -> None:
    x = layer_mesh(0.0, 1.0, 0.01, [0.0, 0.5])
    assert x[0] == 0.0 and x[-1] == 1.0
    assert (x[1:] > x[:-1]).all()
    near = x[(x > 0.45) & (x < 0.55)]
    base_spacing = 1.0 / (BASE_NODES - 1)
    layer_spacing = 2.0 * LAYER_HALF_WIDTH * 0.01 / (LAYER_NODES - 1)
    assert near.size > 0.1 / base_spacing + 1
    assert np.diff(near).max() <= layer_spacing + 1e-12


def test_upwind_window_stays_below_the_energy_level() -> None:
    params = ProblemParams(epsilon=0.05, lam=3.0)
    lo, threshold, hi = upwind_beta_window(params)
    lower_pi = float(EquilibriumBranches(3.0, params.forcing).lower(math.pi))
    ceiling = -math.sqrt(float(energy_H(lower_pi, 3.0))) / 0.05
    assert threshold == pytest.approx(-3.0 / (math.sqrt(2.0) * 0.05))
    assert lo < threshold < hi
    assert hi == pytest.approx(ceiling, rel=1e-12)


def test_epsilon_path_ends_at_target() -> None:
    path = epsilon_path(0.05)
    assert path[0] == pytest.approx(0.1)
    assert path[-1] == pytest.approx(0.05)
    assert ((path[1:] / path[:-1]) >= 0.85 - 1e-12).all()
    assert epsilon_path(0.5)[0] == pytest.approx(1.0)


@pytest.mark.slow
def test_upwind_single_oscillation() -> None:
    params = ProblemParams(epsilon=0.05, lam=3.0)
    result = find_upwind(params, 1)
    assert result.classification == Classification.UPWIND
    assert result.ladder is not None
    assert len(result.ladder.maxima_t) == 1
    assert len(result.ladder.minima_t) == 1
    assert interleaved(result.ladder)
    assert result.ladder.is_decreasing()
    assert float(result.solution.u(0.5 * math.pi)) == pytest.approx(0.0, abs=1e-8)


@pytest.mark.slow
def test_single_maximum_sits_at_pi() -> None:
    params = ProblemParams(epsilon=0.05, lam=3.0)
    result = find_m_maxima(params, 1, collocation=False)
    assert result.classification == Classification.M_MAXIMA
    assert result.m == 1
    assert result.ladder is not None
    assert len(result.ladder.maxima_t) == 1
    assert result.ladder.maxima_t[-1] == pytest.approx(math.pi, abs=1e-6)
    branches = EquilibriumBranches(3.0, params.forcing)
    middle_pi = float(branches.middle(math.pi))
    assert float(result.solution.u(0.0)) < middle_pi < float(result.solution.u(math.pi))
    assert float(result.solution.u(math.pi)) < float(branches.upper(math.pi))
