from dataclasses import dataclass

from integrator import Trajectory
from schema import Classification, ExtremaLadder, SolutionRecord


@dataclass(frozen=True)
class ShootResult:
    """A solution located by shooting or collocation, with its dense trajectory."""

    alpha: float
    residual: float
    solution: Trajectory
    classification: Classification
    m: int | None = None
    method: str = "ivp"
    discriminator: str | None = None
    ladder: ExtremaLadder | None = None
    antisymmetry_defect: float | None = None
    period_defect: float | None = None

    def record(self) -> SolutionRecord:
        return SolutionRecord(
            alpha=self.alpha,
            residual=self.residual,
            classification=self.classification,
            m=self.m,
            method=self.method,
            discriminator=self.discriminator,
            ladder=self.ladder,
            antisymmetry_defect=self.antisymmetry_defect,
            period_defect=self.period_defect,
        )
