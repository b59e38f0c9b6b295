"""Vectorized enumeration of integer boxes and of box points on a rational subspace.

numpy is used only for bulk enumeration; every quantity that could grow
(coefficients, denominators) is checked against an int64 headroom bound
before any array arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterator

import numpy as np

from . import limits
from .errors import SizeLimitExceeded
from .exact_linalg import IntMatrix, as_matrix

CHUNK = 1 << 18
_INT64_SAFE = 1 << 62


def box_points(dim: int, lo: int, hi: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """All of ``[lo, hi]^dim`` in lexicographic chunks of shape ``(rows, dim)``."""
    width = hi - lo + 1
    if dim == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    if width <= 0:
        return
    total = width ** dim
    limits.check_enumeration(total, f"points of a {dim}-dimensional box")
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        out = np.empty((idx.size, dim), dtype=np.int64)
        for t in range(dim - 1, -1, -1):
            idx, digit = np.divmod(idx, width)
            out[:, t] = digit + lo
        yield out


def rref(M: IntMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns nonzero rows and pivot columns."""
    A = [[Fraction(x) for x in row] for row in M.rows]
    pivots: list[int] = []
    r = 0
    for j in range(M.n_cols):
        p = next((i for i in range(r, len(A)) if A[i][j] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][j]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][j] != 0:
                q = A[i][j]
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
    return A[:r], pivots


class KernelParametrization:
    """``{x : A x = 0}`` written as ``x_pivot = -(C x_free) / D`` with integer ``C``."""

    def __init__(self, A):
        A = as_matrix(A)
        self.n_vars = A.n_cols
        rows, self.pivots = rref(A)
        piv = set(self.pivots)
        self.free = [j for j in range(self.n_vars) if j not in piv]
        D = 1
        for row in rows:
            for j in self.free:
                D = lcm(D, row[j].denominator)
        self.denominator = D
        self.coeffs = [[int(row[j] * D) for j in self.free] for row in rows]

    def points(self, lo: int, hi: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
        """Integer points of the subspace inside ``[lo, hi]^n``, in chunks."""
        D = self.denominator
        C = np.array(self.coeffs, dtype=np.int64).reshape(len(self.pivots), len(self.free))
        bound = max(abs(lo), abs(hi), 1)
        worst = (int(np.abs(C).sum(axis=1).max()) if C.size else 0) * bound
        if worst >= _INT64_SAFE:
            raise SizeLimitExceeded("kernel parametrization exceeds int64 headroom")
        for xf in box_points(len(self.free), lo, hi, chunk):
            num = -(xf @ C.T)
            mask = np.all(num % D == 0, axis=1)
            xp = num[mask] // D
            xf = xf[mask]
            ok = np.all((xp >= lo) & (xp <= hi), axis=1)
            out = np.empty((int(ok.sum()), self.n_vars), dtype=np.int64)
            out[:, self.free] = xf[ok]
            out[:, self.pivots] = xp[ok]
            if out.shape[0]:
                yield out


def kernel_box_points(A, lo: int, hi: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    yield from KernelParametrization(A).points(lo, hi, chunk)


def _components(A: IntMatrix) -> list[list[int]]:
    """Connected components of columns, two columns touching when they share a nonzero row."""
    parent = list(range(A.n_cols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in A.rows:
        nz = [j for j, a in enumerate(row) if a]
        for j in nz[1:]:
            parent[find(j)] = find(nz[0])
    groups: dict[int, list[int]] = {}
    for j in range(A.n_cols):
        groups.setdefault(find(j), []).append(j)
    return list(groups.values())


def count_box_kernel(A, lo: int, hi: int) -> int:
    """``#{x in [lo, hi]^n : A x = 0}``, factored over connected components."""
    A = as_matrix(A)
    width = hi - lo + 1
    if width <= 0:
        return 0
    total = 1
    for comp in _components(A):
        rows = [i for i in range(A.n_rows) if any(A[i, j] for j in comp)]
        if not rows:
            total *= width ** len(comp)
            continue
        sub = A.select_rows(rows).select_columns(comp)
        count = sum(chunk.shape[0] for chunk in kernel_box_points(sub, lo, hi))
        if count == 0:
            return 0
        total *= count
    return total


def encode_rows(X: np.ndarray, base: int, offset: int = 0) -> np.ndarray:
    """Injective integer code of each row, reading ``X + offset`` as base-``base`` digits."""
    codes = np.zeros(X.shape[0], dtype=np.int64)
    if base ** X.shape[1] >= _INT64_SAFE:
        raise SizeLimitExceeded("row codes exceed int64 headroom")
    for t in range(X.shape[1]):
        codes = codes * base + (X[:, t] + offset)
    return codes


def zero_masks(X: np.ndarray) -> np.ndarray:
    """Bitmask of the zero coordinates of each row (bit j for column j)."""
    weights = (1 << np.arange(X.shape[1], dtype=np.int64)) if X.shape[1] else np.zeros(0, dtype=np.int64)
    return (X == 0).astype(np.int64) @ weights
