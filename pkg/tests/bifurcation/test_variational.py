import pytest

from bifurcation import (
    fold_direction,
    fold_from_diagram,
    isolation_scan,
    pitchfork_exclusion,
    sweep,
)
from bifurcation.limit import lambda_b_limit
from core.errors import DuffingError, NotAFoldError
from core.forcing import ForcingSpec
from core.problem import ProblemParams
from schema import BifurcationDiagram


def test_pitchfork_excluded_at_unit_epsilon() -> None:
    report = pitchfork_exclusion(ProblemParams(epsilon=1.0, lam=2.0))
    assert report.excluded
    assert report.v_prime_pi > 0
    assert report.fd_relative_error is not None and report.fd_relative_error < 1e-3
    assert report.isolated
    assert isolation_scan(ProblemParams(epsilon=1.0, lam=2.0).truncated(), report.alpha_p)


@pytest.mark.slow
@pytest.mark.parametrize("lam", [1.0, 1.5])
def test_pitchfork_excluded_for_small_epsilon(lam: float) -> None:
    report = pitchfork_exclusion(ProblemParams(epsilon=0.1, lam=lam))
    assert report.v_min > 0
    assert report.v_prime_pi > 0
    assert report.excluded
    assert report.fd_relative_error is not None and report.fd_relative_error < 1e-3


def test_fold_direction_rejects_simple_points() -> None:
    with pytest.raises(NotAFoldError):
        fold_direction(ProblemParams(epsilon=1.0, lam=2.0), 0.0)


def test_fold_needs_a_transition() -> None:
    diagram = BifurcationDiagram(epsilon=1.0, forcing=ForcingSpec.cosine(), slices=[])
    with pytest.raises(DuffingError, match="no 1 → many transition"):
        fold_from_diagram(ProblemParams(epsilon=1.0, lam=1.0), diagram)


def test_lambda_b_limit_needs_epsilons() -> None:
    with pytest.raises(ValueError, match="empty"):
        lambda_b_limit([])


@pytest.mark.slow
def test_fold_at_unit_epsilon() -> None:
    params = ProblemParams(epsilon=1.0, lam=1.0)
    diagram = sweep(params, [0.99, 1.01, 1.03, 1.05], points=300, workers=1)
    fold = fold_from_diagram(params, diagram, points=300, workers=1)
    assert abs(fold.g) < 1e-8
    assert abs(fold.g_slope) < 1e-8
    assert fold.lam == pytest.approx(diagram.lambda_b, abs=1e-3)

    report = fold_direction(params.evolve(lam=fold.lam), fold.alpha)
    assert report.h_prime_pi > 0
    assert report.chain_holds
    assert report.fd_h_prime_pi == pytest.approx(report.h_prime_pi, rel=1e-3)
