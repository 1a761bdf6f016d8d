import math

import numpy as np
import pytest

from core.constants import compute_lambda0
from core.equilibria import (
    Branch,
    EquilibriumBranches,
    cubic_table,
    energy_H,
    solve_cubic_branches,
)
from core.forcing import ForcingSpec

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def test_three_real_roots() -> None:
    table = cubic_table(2.0, 1.0)
    np.testing.assert_allclose(table[0], [-GOLDEN, GOLDEN - 1.0, 1.0], atol=1e-14)


def test_single_root_column_follows_sign_of_c() -> None:
    plus = cubic_table(1.0, 1.0)[0]
    assert np.isfinite(plus[0]) and np.isnan(plus[1]) and np.isnan(plus[2])
    assert plus[0] ** 3 - plus[0] + 1.0 == pytest.approx(0.0, abs=1e-13)

    minus = cubic_table(1.0, -1.0)[0]
    assert np.isnan(minus[0]) and np.isnan(minus[1]) and np.isfinite(minus[2])
    assert minus[2] == pytest.approx(-plus[0])


def test_nonpositive_lambda_has_one_root() -> None:
    roots = solve_cubic_branches(-1.0, 0.5)
    assert roots.count == 1
    assert roots.roots[0] ** 3 + roots.roots[0] + 0.5 == pytest.approx(0.0, abs=1e-13)


def test_double_root_at_lambda0() -> None:
    lambda0 = compute_lambda0()
    roots = solve_cubic_branches(lambda0, 1.0)
    assert roots.labels == (Branch.LOWER, Branch.MIDDLE_UPPER)
    assert roots.roots[0] == pytest.approx(-3.0 / lambda0)
    assert roots.roots[1] == pytest.approx(1.5 / lambda0)
    assert roots.roots[1] == pytest.approx(0.7937005, abs=1e-6)
    assert roots.root(Branch.UPPER) == roots.root(Branch.MIDDLE)


def test_vectorised_table_matches_scalar() -> None:
    c = np.linspace(-1.0, 1.0, 11)
    table = cubic_table(2.0, c)
    assert table.shape == (11, 3)
    for row, ci in zip(table, c):
        np.testing.assert_allclose(row, solve_cubic_branches(2.0, float(ci)).roots, atol=1e-13)
    residual = table**3 - 2.0 * table + c[:, None]
    assert np.max(np.abs(residual)) < 1e-12


def test_energy_H_is_even() -> None:
    u = np.linspace(-2.0, 2.0, 9)
    np.testing.assert_array_equal(energy_H(u, 2.0), energy_H(-u, 2.0))
    assert energy_H(1.0, 2.0) == pytest.approx(1.5)


def test_branches_are_ordered_for_large_lambda() -> None:
    branches = EquilibriumBranches(2.0, ForcingSpec.cosine())
    t = np.linspace(0.0, 2.0 * math.pi, 201)
    assert branches.has_three(t)
    assert np.all(branches.lower(t) < branches.middle(t))
    assert np.all(branches.middle(t) < branches.upper(t))
    np.testing.assert_array_equal(branches.lowest(t), branches.lower(t))


def test_branch_count_drops_below_lambda0() -> None:
    branches = EquilibriumBranches(1.0, ForcingSpec.cosine())
    assert int(branches.count(0.0)) == 1
    assert int(branches.count(math.pi / 2.0)) == 3
    assert not branches.has_three(np.array([0.0, math.pi / 2.0]))
    assert np.isfinite(branches.lowest(0.0))


def test_branch_slope_matches_finite_difference() -> None:
    branches = EquilibriumBranches(2.0, ForcingSpec.cosine())
    t, h = 0.7, 1e-6
    fd = (branches.upper(t + h) - branches.upper(t - h)) / (2.0 * h)
    assert float(branches.slope(branches.upper(t), t)) == pytest.approx(float(fd), rel=1e-6)
