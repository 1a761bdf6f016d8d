import math

import numpy as np
import pytest

from core.constants import homoclinic_anchor
from core.errors import ProfileWindowError
from core.profiles import LimitKind, heteroclinic_closed_form, limit_profile


def test_heteroclinic_plus_connects_saddles() -> None:
    profile = limit_profile(LimitKind.HETEROCLINIC_PLUS, 2.0)
    assert profile.values[0] == pytest.approx(math.sqrt(2.0), abs=1e-3)
    assert profile.values[-1] == pytest.approx(-math.sqrt(2.0), abs=1e-3)
    assert profile.left_limit == pytest.approx(math.sqrt(2.0))
    assert profile.right_limit == pytest.approx(-math.sqrt(2.0))
    assert profile.energy_drift <= 1e-9
    assert np.all(np.diff(profile.values) <= 1e-12)


def test_heteroclinic_matches_closed_form() -> None:
    profile = limit_profile(LimitKind.HETEROCLINIC_PLUS, 2.0)
    np.testing.assert_allclose(
        profile.values, heteroclinic_closed_form(2.0, profile.tau), atol=1e-6
    )


def test_heteroclinic_minus_is_reflection() -> None:
    plus = limit_profile(LimitKind.HETEROCLINIC_PLUS, 2.0)
    minus = limit_profile(LimitKind.HETEROCLINIC_MINUS, 2.0)
    assert minus.kind == LimitKind.HETEROCLINIC_MINUS
    tau = np.linspace(-5.0, 5.0, 41)
    np.testing.assert_allclose(minus.value(tau), -plus.value(-tau), atol=1e-12)


def test_homoclinic_turns_at_anchor() -> None:
    profile = limit_profile(LimitKind.HOMOCLINIC, 2.0)
    anchor = homoclinic_anchor(2.0, 1.0)
    assert profile.anchor == pytest.approx(anchor)
    assert float(np.min(profile.values)) == pytest.approx(anchor, abs=1e-9)
    assert profile.values[0] == pytest.approx(1.0, abs=1e-3)
    assert profile.values[-1] == pytest.approx(1.0, abs=1e-3)
    np.testing.assert_allclose(profile.values, profile.values[::-1], atol=1e-12)


def test_homoclinic_minus_one() -> None:
    plus = limit_profile(LimitKind.HOMOCLINIC, 2.0)
    minus = limit_profile(LimitKind.HOMOCLINIC_MINUS_ONE, 2.0)
    assert minus.kappa == -1.0
    np.testing.assert_allclose(minus.values, -plus.values)


def test_values_are_clamped_outside_window() -> None:
    profile = limit_profile(LimitKind.HETEROCLINIC_PLUS, 2.0)
    far = profile.window + 10.0
    assert float(profile.value(-far)) == profile.left_limit
    assert float(profile.value(far)) == profile.right_limit
    assert float(profile.slope(far)) == 0.0
    assert profile.settle_window() <= profile.window


def test_window_too_large() -> None:
    with pytest.raises(ProfileWindowError):
        limit_profile(LimitKind.HOMOCLINIC, 2.0, T=200.0)
