import math

import numpy as np
import pytest

from core.problem import ProblemParams
from shooting import G, G_with_slope, g_curve, zeros_of_G
from shooting.functional import merge_roots, refine_root, scan_grid, sign_change_brackets


def test_slope_matches_finite_difference() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    h = 1e-6
    value, slope = G_with_slope(0.3, params)
    assert value == pytest.approx(G(0.3, params), abs=1e-10)
    fd = (G(0.3 + h, params) - G(0.3 - h, params)) / (2.0 * h)
    assert slope == pytest.approx(fd, rel=1e-5)


def test_scan_grid_is_reproducible() -> None:
    a = scan_grid(-2.0, 2.0, 50, seed=7)
    b = scan_grid(-2.0, 2.0, 50, seed=7)
    np.testing.assert_array_equal(a, b)
    assert a[0] == -2.0 and a[-1] == 2.0
    assert np.all(np.diff(a) > 0)
    assert not np.array_equal(a, scan_grid(-2.0, 2.0, 50, seed=8))


def test_sign_change_brackets() -> None:
    alphas = np.array([0.0, 1.0, 2.0, 3.0, 4.0])
    values = np.array([1.0, -1.0, -2.0, 0.0, 3.0])
    brackets = sign_change_brackets(alphas, values)
    assert [b[0] for b in brackets] == [0, 2]


def test_refine_root() -> None:
    root = refine_root(lambda x: x * x - 2.0, 0.0, 2.0)
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-12)
    with pytest.raises(ValueError, match="no sign change"):
        refine_root(lambda x: x * x + 1.0, 0.0, 2.0)


def test_refine_root_at_default_tolerances() -> None:
    assert refine_root(lambda x: x - 0.3, 0.0, 1.0) == pytest.approx(0.3, abs=1e-12)
    assert refine_root(lambda x: x - 0.3, 0.0, 1.0, width=1.0) == pytest.approx(0.3, abs=1e-12)


def test_merge_roots() -> None:
    assert merge_roots([1.0, 0.5, 1.0 + 1e-10, 2.0]) == [0.5, 1.0, 2.0]


def test_g_curve_agrees_with_single_runs() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    curve = g_curve(params, points=11, workers=1)
    assert curve.alphas[0] == -params.barrier - 1.0
    assert curve.alphas[-1] == params.barrier + 1.0
    assert curve.values.shape == (11,)
    for alpha, value in zip(curve.alphas[::5], curve.values[::5]):
        assert value == pytest.approx(G(float(alpha), params), rel=1e-7, abs=1e-7)


def test_unique_zero_for_nonpositive_lambda() -> None:
    """With λ ≤ 0 the nonlinearity is monotone and there is exactly one periodic solution."""
    params = ProblemParams(epsilon=1.0, lam=-1.0)
    scan = zeros_of_G(params, points=200, workers=1)
    assert len(scan.roots) == 1
    assert abs(G(scan.roots[0], params)) < 1e-8
    assert len(set(scan.counts[-2:])) == 1


@pytest.mark.slow
def test_scan_is_independent_of_worker_count() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    serial = g_curve(params, points=600, workers=1)
    pooled = g_curve(params, points=600, workers=2)
    np.testing.assert_array_equal(serial.values, pooled.values)
