import math
from functools import cached_property
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from core.forcing import ForcingSpec


def default_barrier(lam: float, sup_g: float = 1.0) -> float:
    """
    Barrier level b with b³ − λb − sup|g| > 0.

    b(λ) = √(λ + 1/(2λ)) is used whenever it already clears the inequality;
    otherwise the level is doubled from 1 until it does.
    """
    if lam > 0:
        b = math.sqrt(lam + 1.0 / (2.0 * lam))
        if b**3 - lam * b - sup_g > 0:
            return b
    b = 1.0
    while b**3 - lam * b - sup_g <= 0:
        b *= 2.0
    return b


class ProblemParams(BaseModel):
    """Immutable parameters of ε²u″ = u³ − λu + g(t)."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    epsilon: float = Field(gt=0, description="Singular-perturbation parameter ε.", examples=[1.0])
    lam: float = Field(alias="lambda", description="Parameter λ.", examples=[2.0])
    forcing: ForcingSpec = Field(
        default_factory=ForcingSpec,
        description="Forcing g(t).",
    )
    truncate: bool = Field(
        default=False,
        description="Freeze u³ − λu outside [−b, b] so every solution exists on finite intervals.",
    )
    b: float | None = Field(
        default=None,
        gt=0,
        description="Explicit barrier level; defaults to the barrier rule for λ and sup|g|.",
    )

    @cached_property
    def sup_g(self) -> float:
        return self.forcing.sup_abs()

    @computed_field  # type: ignore[prop-decorator]
    @cached_property
    def barrier(self) -> float:
        if self.b is not None:
            return self.b
        return default_barrier(self.lam, self.sup_g)

    @model_validator(mode="after")
    def _barrier_clears_forcing(self) -> "ProblemParams":
        if self.truncate:
            b = self.barrier
            if b**3 - self.lam * b - self.sup_g <= 0:
                raise ValueError(
                    f"barrier b={b} does not satisfy b³ − λb − sup|g| > 0 at λ={self.lam}"
                )
        return self

    def nonlinearity(self, u: ArrayLike) -> NDArray[np.float64]:
        """u³ − λu, frozen at ±b outside the barrier when truncation is on."""
        u = np.asarray(u, dtype=float)
        if self.truncate:
            u = np.clip(u, -self.barrier, self.barrier)
        return u**3 - self.lam * u

    def acceleration(self, t: ArrayLike, u: ArrayLike) -> NDArray[np.float64]:
        """u″ = (u³ − λu + g(t))/ε²."""
        return (self.nonlinearity(u) + self.forcing.value(t)) / self.epsilon**2

    def evolve(self, **changes: Any) -> "ProblemParams":
        """Copy with changed fields, validated again."""
        data = self.model_dump(exclude={"barrier"})
        data.update(changes)
        return type(self).model_validate(data)

    def truncated(self) -> "ProblemParams":
        return self if self.truncate else self.evolve(truncate=True)
