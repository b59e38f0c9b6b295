"""The unimodularity hierarchy TU => {SQU, ISH} => QU, and period bounds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import lcm, prod
from typing import Optional

from . import limits
from .errors import SizeLimitExceeded
from .exact_linalg import IntMatrix, as_matrix, determinant, invariant_factors, pivot


@dataclass(frozen=True)
class SubsetData:
    """Rank and invariant factors of one column-selected submatrix."""

    columns: tuple[int, ...]
    rank: int
    factors: tuple[int, ...]

    @property
    def torsion(self) -> int:
        return prod(self.factors)


@lru_cache(maxsize=256)
def _subset_table(M: IntMatrix) -> tuple[SubsetData, ...]:
    m = M.n_cols
    table = []
    for mask in range(1 << m):
        cols = tuple(j for j in range(m) if mask >> j & 1)
        factors = invariant_factors(M.select_columns(cols))
        table.append(SubsetData(cols, len(factors), factors))
    return tuple(table)


def subset_table(M) -> tuple[SubsetData, ...]:
    """``SubsetData`` for every column subset, indexed by bitmask."""
    M = as_matrix(M)
    limits.check_subsets(M.n_cols)
    return _subset_table(M)


def tu_witness(M, max_dim: int = limits.TU_MAX_DIM) -> Optional[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """First square submatrix whose determinant is outside {-1, 0, 1}."""
    M = as_matrix(M)
    n, m = M.shape
    if min(n, m) > max_dim:
        raise SizeLimitExceeded(f"exhaustive TU check of a {n}x{m} matrix exceeds dimension bound {max_dim}")
    for i in range(n):
        for j in range(m):
            if M[i, j] not in (-1, 0, 1):
                return ((i,), (j,), M[i, j])
    for size in range(2, min(n, m) + 1):
        for rows in combinations(range(n), size):
            sub = M.select_rows(rows)
            for cols in combinations(range(m), size):
                d = determinant(sub.select_columns(cols))
                if d not in (-1, 0, 1):
                    return (rows, cols, d)
    return None


def is_TU(M, max_dim: int = limits.TU_MAX_DIM) -> bool:
    return tu_witness(M, max_dim) is None


def is_QU(M) -> bool:
    return all(a == 1 for a in invariant_factors(M))


def squ_witness(M, max_cols: int = limits.SQU_MAX_COLS) -> Optional[tuple[int, ...]]:
    """A column subset with a nontrivial invariant factor, if any."""
    M = as_matrix(M)
    if M.n_cols > max_cols:
        raise SizeLimitExceeded(f"SQU check over 2^{M.n_cols} column subsets exceeds 2^{max_cols}")
    for data in subset_table(M):
        if data.torsion != 1:
            return data.columns
    return None


def is_SQU(M, max_cols: int = limits.SQU_MAX_COLS) -> bool:
    return squ_witness(M, max_cols) is None


@lru_cache(maxsize=100_000)
def _ish(M: IntMatrix) -> bool:
    if M.n_cols == 0 or M.is_zero():
        return True
    for r in range(M.n_rows):
        for f in range(M.n_cols):
            if M[r, f] in (1, -1) and _ish(M.delete_column(f)) and _ish(pivot(M, r, f)):
                return True
    return False


def is_ISH(M, max_cols: int = limits.ISH_MAX_COLS) -> bool:
    """Iteratively shrinkable: zero/empty, or some unit pivot with both branches ISH."""
    M = as_matrix(M)
    if M.n_cols > max_cols:
        raise SizeLimitExceeded(f"ISH recursion on {M.n_cols} columns exceeds bound {max_cols}")
    return _ish(M)


def period_bound(M) -> int:
    """lcm of all invariant factors of all column-selected submatrices."""
    out = 1
    for data in subset_table(M):
        for a in data.factors:
            out = lcm(out, a)
    return out


@dataclass(frozen=True)
class UnimodularityReport:
    is_tu: bool
    is_squ: bool
    is_qu: bool
    is_ish: bool
    period_bound: int
    tu_witness: Optional[tuple] = None
    squ_witness: Optional[tuple[int, ...]] = None

    def hierarchy_holds(self) -> bool:
        return (
            (not self.is_tu or (self.is_squ and self.is_ish))
            and (not self.is_squ or self.is_qu)
            and (not self.is_ish or self.is_qu)
        )

    def to_json(self) -> dict:
        return {
            "tu": self.is_tu,
            "squ": self.is_squ,
            "qu": self.is_qu,
            "ish": self.is_ish,
            "period_bound": self.period_bound,
        }


def classify(M) -> UnimodularityReport:
    M = as_matrix(M)
    tw = tu_witness(M)
    sw = squ_witness(M)
    return UnimodularityReport(
        is_tu=tw is None,
        is_squ=sw is None,
        is_qu=is_QU(M),
        is_ish=is_ISH(M),
        period_bound=period_bound(M),
        tu_witness=tw,
        squ_witness=sw,
    )
