import math
from collections.abc import Callable
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import minimize_scalar


class ForcingKind(StrEnum):
    COSINE = "cosine"
    COS_MINUS_SIN2 = "cos-minus-sin2"
    FOURIER = "fourier"


class FourierTerm(BaseModel):
    """One harmonic a·cos(kt) + b·sin(kt) of a Fourier forcing."""

    model_config = ConfigDict(frozen=True)

    harmonic: int = Field(ge=0, description="Harmonic k.", examples=[1])
    cos_coef: float = Field(default=0.0, description="Coefficient of cos(kt).", examples=[1.0])
    sin_coef: float = Field(default=0.0, description="Coefficient of sin(kt).", examples=[0.0])


class ForcingSpec(BaseModel):
    """Periodic forcing g(t) on the right-hand side of ε²u″ = u³ − λu + g(t)."""

    model_config = ConfigDict(frozen=True)

    kind: ForcingKind = Field(
        default=ForcingKind.COSINE,
        description="Forcing family.",
        examples=["cosine", "cos-minus-sin2"],
    )
    terms: tuple[FourierTerm, ...] = Field(
        default=(),
        description="Fourier terms; only used by the fourier kind.",
    )

    @model_validator(mode="after")
    def _terms_only_for_fourier(self) -> "ForcingSpec":
        if self.kind != ForcingKind.FOURIER and self.terms:
            raise ValueError(f"terms are only accepted by the fourier kind, not {self.kind}")
        return self

    @classmethod
    def cosine(cls) -> "ForcingSpec":
        return cls()

    @classmethod
    def fourier(cls, *terms: tuple[int, float, float]) -> "ForcingSpec":
        return cls(
            kind=ForcingKind.FOURIER,
            terms=tuple(FourierTerm(harmonic=k, cos_coef=a, sin_coef=b) for k, a, b in terms),
        )

    def value(self, t: ArrayLike) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=float)
        match self.kind:
            case ForcingKind.COSINE:
                return np.cos(t)
            case ForcingKind.COS_MINUS_SIN2:
                return np.cos(t) - np.sin(2.0 * t)
            case _:
                out = np.zeros_like(t)
                for term in self.terms:
                    out = out + term.cos_coef * np.cos(term.harmonic * t)
                    out = out + term.sin_coef * np.sin(term.harmonic * t)
                return out

    def derivative(self, t: ArrayLike) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=float)
        match self.kind:
            case ForcingKind.COSINE:
                return -np.sin(t)
            case ForcingKind.COS_MINUS_SIN2:
                return -np.sin(t) - 2.0 * np.cos(2.0 * t)
            case _:
                out = np.zeros_like(t)
                for term in self.terms:
                    k = term.harmonic
                    out = out - k * term.cos_coef * np.sin(k * t)
                    out = out + k * term.sin_coef * np.cos(k * t)
                return out

    def scalar(self) -> Callable[[float], float]:
        """g as a plain float function, for right-hand sides evaluated once per stage."""
        match self.kind:
            case ForcingKind.COSINE:
                return math.cos
            case ForcingKind.COS_MINUS_SIN2:
                return lambda t: math.cos(t) - math.sin(2.0 * t)
            case _:
                terms = [(t.harmonic, t.cos_coef, t.sin_coef) for t in self.terms]
                return lambda t: sum(a * math.cos(k * t) + b * math.sin(k * t) for k, a, b in terms)

    def scalar_derivative(self) -> Callable[[float], float]:
        match self.kind:
            case ForcingKind.COSINE:
                return lambda t: -math.sin(t)
            case ForcingKind.COS_MINUS_SIN2:
                return lambda t: -math.sin(t) - 2.0 * math.cos(2.0 * t)
            case _:
                terms = [(t.harmonic, t.cos_coef, t.sin_coef) for t in self.terms]
                return lambda t: sum(
                    k * (b * math.cos(k * t) - a * math.sin(k * t)) for k, a, b in terms
                )

    def coefficient_bound(self) -> float:
        """Upper bound on sup|g| from the coefficients."""
        match self.kind:
            case ForcingKind.COSINE:
                return 1.0
            case ForcingKind.COS_MINUS_SIN2:
                return 2.0
            case _:
                return float(sum(abs(t.cos_coef) + abs(t.sin_coef) for t in self.terms))

    def sup_abs(self) -> float:
        """sup|g| over one period (dense grid, then bounded refinement of the best cell)."""
        if self.kind == ForcingKind.COSINE:
            return 1.0
        if self.coefficient_bound() == 0.0:
            return 0.0
        top = max([1] + [term.harmonic for term in self.terms])
        grid = np.linspace(0.0, 2.0 * np.pi, 4096 * top + 1)
        values = np.abs(self.value(grid))
        i = int(np.argmax(values))
        h = grid[1] - grid[0]
        res = minimize_scalar(
            lambda s: -abs(float(self.value(s))),
            bounds=(grid[i] - h, grid[i] + h),
            method="bounded",
            options={"xatol": 1e-13},
        )
        return float(max(values[i], -res.fun))

    def is_even(self) -> bool:
        """g(−t) = g(t)."""
        match self.kind:
            case ForcingKind.COSINE:
                return True
            case ForcingKind.COS_MINUS_SIN2:
                return False
            case _:
                return all(term.sin_coef == 0.0 for term in self.terms if term.harmonic > 0)

    def is_half_antiperiodic(self) -> bool:
        """g(t + π) = −g(t)."""
        match self.kind:
            case ForcingKind.COSINE:
                return True
            case ForcingKind.COS_MINUS_SIN2:
                return False
            case _:
                return all(
                    term.cos_coef == 0.0 and term.sin_coef == 0.0
                    for term in self.terms
                    if term.harmonic % 2 == 0
                )
