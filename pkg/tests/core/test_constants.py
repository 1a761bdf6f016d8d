import math

import pytest

from core.constants import (
    compute_Lambda,
    compute_lambda0,
    critical_constants,
    fold_level,
    homoclinic_anchor,
    lambda_gap,
    layer_rate,
    tail_constant,
)
from core.equilibria import frozen_potential, solve_cubic_branches
from core.errors import LambdaBelowLambda0Error, NoFiniteLambda0Error, NoHomoclinicError
from core.forcing import ForcingKind, ForcingSpec


def test_lambda0_for_cosine() -> None:
    lambda0 = compute_lambda0()
    assert lambda0 == pytest.approx(3.0 / 2.0 ** (2.0 / 3.0), rel=1e-13)
    assert fold_level(lambda0) == pytest.approx(1.0, rel=1e-12)


def test_lambda0_grows_with_amplitude() -> None:
    stronger = compute_lambda0(ForcingSpec(kind=ForcingKind.COS_MINUS_SIN2))
    assert stronger > compute_lambda0()
    assert fold_level(stronger) == pytest.approx(
        ForcingSpec(kind=ForcingKind.COS_MINUS_SIN2).sup_abs(), rel=1e-10
    )


def test_lambda0_needs_nonzero_forcing() -> None:
    with pytest.raises(NoFiniteLambda0Error):
        compute_lambda0(ForcingSpec.fourier())


def test_homoclinic_anchor_levels_with_saddle() -> None:
    anchor = homoclinic_anchor(3.0, 1.0)
    assert anchor == pytest.approx(-0.389, abs=1e-3)
    saddle = solve_cubic_branches(3.0, 1.0).roots[2]
    assert float(frozen_potential(anchor, 3.0, 1.0)) == pytest.approx(
        float(frozen_potential(saddle, 3.0, 1.0)), abs=1e-12
    )


def test_homoclinic_needs_three_roots() -> None:
    with pytest.raises(NoHomoclinicError):
        homoclinic_anchor(1.0, 1.0)


def test_Lambda_is_the_gap_crossing() -> None:
    lambda0 = compute_lambda0()
    assert lambda_gap(lambda0 + 1e-3) > 0
    assert lambda_gap(3.0) < 0
    Lambda = compute_Lambda()
    assert lambda0 < Lambda < 3.0
    assert lambda_gap(Lambda) == pytest.approx(0.0, abs=1e-9)


def test_layer_rate() -> None:
    K = layer_rate(2.0)
    assert K == pytest.approx(math.sqrt(1.0 - math.sqrt(2.0 / 3.0)), rel=1e-12)
    with pytest.raises(LambdaBelowLambda0Error):
        layer_rate(1.0)


def test_tail_constant() -> None:
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    assert tail_constant(2.0) == pytest.approx(2.0 * (golden - math.sqrt(2.0 / 3.0)), rel=1e-12)


def test_critical_constants_bundle() -> None:
    constants = critical_constants(2.0)
    assert constants.lambda0 == pytest.approx(compute_lambda0())
    assert constants.Lambda is not None
    assert constants.K == pytest.approx(layer_rate(2.0))
    assert constants.H(1.0) == pytest.approx(1.5)

    below = critical_constants(1.0, ForcingSpec(kind=ForcingKind.COS_MINUS_SIN2))
    assert below.K is None
    assert below.Lambda is None
