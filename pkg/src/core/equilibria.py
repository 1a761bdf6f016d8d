"""
Equilibrium geometry of u³ − λu + g(t) = 0.

The roots are computed in closed form (trigonometric form for three real roots,
Cardano otherwise) and polished by guarded Newton steps. Everything is
vectorised over the forcing value c = g(t); missing branches are NaN.
"""

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from core.forcing import ForcingSpec

DEGENERATE_TOL = 1e-12
NEWTON_STEPS = 3


class Branch(StrEnum):
    LOWER = "lower"
    MIDDLE = "middle"
    UPPER = "upper"
    LOWER_MIDDLE = "lower+middle"
    MIDDLE_UPPER = "middle+upper"


@dataclass(frozen=True)
class CubicRoots:
    lam: float
    c: float
    roots: tuple[float, ...]
    labels: tuple[Branch, ...]

    @property
    def count(self) -> int:
        return len(self.roots)

    def root(self, branch: Branch) -> float | None:
        for value, label in zip(self.roots, self.labels):
            if label == branch or branch.value in label.value.split("+"):
                return value
        return None


def _residual(r: NDArray[np.float64], lam: float, c: NDArray[np.float64]) -> NDArray[np.float64]:
    return r**3 - lam * r + c


def _polish(
    table: NDArray[np.float64], lam: float, c: NDArray[np.float64], skip: NDArray[np.bool_]
) -> None:
    """Guarded Newton steps on the finite entries of the (n, 3) root table, in place."""
    rows = table.shape[0]
    for _ in range(NEWTON_STEPS):
        for j in range(3):
            r = table[:, j]
            finite = np.isfinite(r)
            if not finite.any():
                continue
            f = _residual(r, lam, c)
            df = 3.0 * r**2 - lam
            with np.errstate(divide="ignore", invalid="ignore"):
                step = np.where(np.abs(df) > 1e-300, f / df, 0.0)
            gap = np.full(rows, np.inf)
            for other in range(3):
                if other == j:
                    continue
                d = np.abs(table[:, other] - r)
                gap = np.where(np.isfinite(d) & (d > 0), np.minimum(gap, d), gap)
            candidate = r - step
            improves = np.abs(_residual(candidate, lam, c)) < np.abs(f)
            accept = finite & ~skip & improves & (np.abs(step) <= 0.5 * gap)
            table[:, j] = np.where(accept, candidate, r)


def cubic_table(lam: float, c: ArrayLike) -> NDArray[np.float64]:
    """
    Roots of u³ − λu + c = 0 as an (n, 3) table of lower, middle and upper roots.

    A double root fills both merged columns. A single real root sits in the
    lower column for c > 0, the upper column for c < 0 and the middle column for c = 0.
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    table = np.full((c.size, 3), np.nan)
    disc = 4.0 * lam**3 - 27.0 * c**2
    scale = np.maximum(np.maximum(4.0 * abs(lam) ** 3, 27.0 * c**2), 1e-300)
    degenerate = (lam > 0) & (np.abs(disc) <= DEGENERATE_TOL * scale)
    three = (lam > 0) & (disc > 0) & ~degenerate
    single = ~three & ~degenerate

    if three.any():
        m = 2.0 * np.sqrt(lam / 3.0)
        phi = np.arccos(np.clip(-3.0 * c[three] / (m * lam), -1.0, 1.0)) / 3.0
        shifts = 2.0 * np.pi * np.arange(3) / 3.0
        table[three] = np.sort(m * np.cos(phi[:, None] - shifts[None, :]), axis=1)

    if degenerate.any():
        cd = c[degenerate]
        double = 1.5 * cd / lam
        simple = -3.0 * cd / lam
        table[degenerate] = np.where(
            (cd > 0)[:, None],
            np.stack([simple, double, double], axis=1),
            np.stack([double, double, simple], axis=1),
        )

    if single.any():
        cs = c[single]
        delta = np.maximum(cs**2 / 4.0 - lam**3 / 27.0, 0.0)
        sq = np.sqrt(delta)
        r = np.cbrt(-cs / 2.0 + sq) + np.cbrt(-cs / 2.0 - sq)
        column = np.where(cs > 0, 0, np.where(cs < 0, 2, 1))
        rows = np.flatnonzero(single)
        table[rows, column] = r

    _polish(table, lam, c, degenerate)
    return table


def solve_cubic_branches(lam: float, c: float) -> CubicRoots:
    """Sorted real roots of u³ − λu + c = 0 with branch labels."""
    row = cubic_table(lam, c)[0]
    finite = np.isfinite(row)
    if finite.all() and row[0] == row[1] and row[1] != row[2]:
        pair = (float(row[0]), float(row[2]))
        return CubicRoots(lam, c, pair, (Branch.LOWER_MIDDLE, Branch.UPPER))
    if finite.all() and row[1] == row[2] and row[0] != row[1]:
        pair = (float(row[0]), float(row[1]))
        return CubicRoots(lam, c, pair, (Branch.LOWER, Branch.MIDDLE_UPPER))
    if finite.all():
        return CubicRoots(
            lam, c, tuple(float(x) for x in row), (Branch.LOWER, Branch.MIDDLE, Branch.UPPER)
        )
    j = int(np.flatnonzero(finite)[0])
    return CubicRoots(lam, c, (float(row[j]),), ((Branch.LOWER, Branch.MIDDLE, Branch.UPPER)[j],))


def energy_H(u: ArrayLike, lam: float) -> NDArray[np.float64]:
    """H(u) = λu² − u⁴/2."""
    u = np.asarray(u, dtype=float)
    u2 = u * u
    return lam * u2 - 0.5 * (u2 * u2)


def frozen_potential(v: ArrayLike, lam: float, kappa: float) -> NDArray[np.float64]:
    """¼v⁴ − ½λv² + κv; ½v̇² minus this is conserved by v̈ = v³ − λv + κ."""
    v = np.asarray(v, dtype=float)
    return 0.25 * v**4 - 0.5 * lam * v**2 + kappa * v


@dataclass(frozen=True)
class EquilibriumBranches:
    """Branches U̲ ≤ U₀ ≤ Ū of u³ − λu + g(t) = 0 as functions of t."""

    lam: float
    forcing: ForcingSpec

    def table(self, t: ArrayLike) -> NDArray[np.float64]:
        return cubic_table(self.lam, self.forcing.value(t))

    def at(self, t: float) -> CubicRoots:
        return solve_cubic_branches(self.lam, float(self.forcing.value(t)))

    def lower(self, t: ArrayLike) -> NDArray[np.float64]:
        return self._column(t, 0)

    def middle(self, t: ArrayLike) -> NDArray[np.float64]:
        return self._column(t, 1)

    def upper(self, t: ArrayLike) -> NDArray[np.float64]:
        return self._column(t, 2)

    def lowest(self, t: ArrayLike) -> NDArray[np.float64]:
        """Smallest real root, defined for every λ."""
        return self._reduce(t, np.nanmin)

    def highest(self, t: ArrayLike) -> NDArray[np.float64]:
        return self._reduce(t, np.nanmax)

    def count(self, t: ArrayLike) -> NDArray[np.int_]:
        table = self.table(t)
        distinct = np.isfinite(table).sum(axis=1)
        merged = (table[:, 0] == table[:, 1]) | (table[:, 1] == table[:, 2])
        out = np.where(merged & (distinct == 3), 2, distinct)
        return out.reshape(np.shape(t)) if np.ndim(t) else out

    def slope(self, values: ArrayLike, t: ArrayLike) -> NDArray[np.float64]:
        """U′(t) = −g′(t)/(3U² − λ) along a branch with the given values."""
        values = np.asarray(values, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return -self.forcing.derivative(t) / (3.0 * values**2 - self.lam)

    def has_three(self, t: ArrayLike) -> bool:
        return bool(np.all(self.count(t) == 3))

    def _column(self, t: ArrayLike, j: int) -> NDArray[np.float64]:
        col = self.table(t)[:, j]
        return col.reshape(np.shape(t)) if np.ndim(t) else col[0]

    def _reduce(self, t: ArrayLike, fn) -> NDArray[np.float64]:  # type: ignore[no-untyped-def]
        col = fn(self.table(t), axis=1)
        return col.reshape(np.shape(t)) if np.ndim(t) else col[0]
