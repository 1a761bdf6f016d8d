import math

import numpy as np
import pytest

from core.equilibria import EquilibriumBranches
from core.errors import KindMismatchError
from core.forcing import ForcingSpec
from core.problem import ProblemParams
from integrator import integrate_truncated
from schema import BifurcationDiagram, Classification, DiagramSlice, ZeroRecord
from shooting import GCurve, ShootResult
from storage import PlotKind, emit_plot_data


def test_equilibria_table() -> None:
    branches = EquilibriumBranches(1.0, ForcingSpec.cosine())
    table = emit_plot_data(branches, "equilibria", t=[0.0, math.pi / 2.0])
    assert table.columns == ("t", "lower", "middle", "upper")
    assert math.isnan(table.column("upper")[0])
    assert table.column("middle")[1] == pytest.approx(0.0, abs=1e-12)


def test_default_equilibria_grid() -> None:
    table = emit_plot_data(EquilibriumBranches(2.0, ForcingSpec.cosine()), PlotKind.EQUILIBRIA)
    assert len(table) == 801
    assert table.column("t")[-1] == pytest.approx(2.0 * math.pi)


def test_solutions_table() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    run = integrate_truncated(params, 0.0, 1.0, (0.3, 0.0))
    result = ShootResult(alpha=0.3, residual=0.0, solution=run, classification=Classification.U1)
    table = emit_plot_data(result, "solutions", t=[0.0, 0.5, 2.0])
    assert table.columns == ("t", "u1")
    assert table.column("u1")[0] == pytest.approx(0.3)
    assert math.isnan(table.column("u1")[2])


def test_g_curve_and_diagram_tables() -> None:
    params = ProblemParams(epsilon=1.0, lam=2.0)
    curve = GCurve(params, np.array([0.0, 1.0]), np.array([-1.0, 1.0]))
    assert emit_plot_data(curve, "g-curve").columns == ("alpha", "G")

    diagram = BifurcationDiagram(
        epsilon=1.0,
        forcing=ForcingSpec.cosine(),
        slices=[
            DiagramSlice(lam=1.0, zeros=[ZeroRecord(alpha=-1.0, g_slope=0.5, v_prime_pi=0.5)]),
            DiagramSlice(lam=1.1, zeros=[]),
        ],
    )
    table = emit_plot_data(diagram, PlotKind.DIAGRAM)
    assert table.columns == ("lambda", "alpha", "G_slope", "v_prime_pi")
    assert len(table) == 1


def test_kind_mismatch() -> None:
    with pytest.raises(KindMismatchError):
        emit_plot_data(EquilibriumBranches(2.0, ForcingSpec.cosine()), "spikes")
    with pytest.raises(ValueError):
        emit_plot_data(EquilibriumBranches(2.0, ForcingSpec.cosine()), "histogram")
