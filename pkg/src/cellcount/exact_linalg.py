"""Exact integer and rational linear algebra.

All arithmetic is on Python ints and :class:`fractions.Fraction`, so nothing
here can overflow or round.  Matrices are small (desk scale), so the
algorithms favour clarity over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from operator import index
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, NonUnitPivot


class IntMatrix:
    """Immutable dense integer matrix with arbitrary-precision entries.

    The shape is stored explicitly so that ``n x 0`` and ``0 x m`` matrices
    keep their dimensions (a facet-free complex still has ridges).
    """

    __slots__ = ("n_rows", "n_cols", "_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], n_cols: Optional[int] = None):
        data = tuple(tuple(index(x) for x in row) for row in rows)
        if n_cols is None:
            if not data:
                raise DimensionMismatch("cannot infer the column count of a matrix with no rows")
            n_cols = len(data[0])
        for i, row in enumerate(data):
            if len(row) != n_cols:
                raise DimensionMismatch(f"row {i} has length {len(row)}, expected {n_cols}")
        self.n_rows = len(data)
        self.n_cols = n_cols
        self._rows = data
        self._hash = None

    @classmethod
    def from_flat(cls, n_rows: int, n_cols: int, entries: Sequence[int]) -> "IntMatrix":
        if len(entries) != n_rows * n_cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {n_rows}x{n_cols} matrix")
        return cls((entries[i * n_cols:(i + 1) * n_cols] for i in range(n_rows)), n_cols)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "IntMatrix":
        return cls(([0] * n_cols for _ in range(n_rows)), n_cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for row in self._rows for x in row)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.n_cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix((self.col(j) for j in range(self.n_cols)), self.n_rows)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def select_columns(self, cols: Iterable[int]) -> "IntMatrix":
        cols = list(cols)
        for j in cols:
            if not 0 <= j < self.n_cols:
                raise IndexOutOfRange(f"column {j} out of range for {self.n_cols} columns")
        return IntMatrix(([row[j] for j in cols] for row in self._rows), len(cols))

    def select_rows(self, rows: Iterable[int]) -> "IntMatrix":
        rows = list(rows)
        for i in rows:
            if not 0 <= i < self.n_rows:
                raise IndexOutOfRange(f"row {i} out of range for {self.n_rows} rows")
        return IntMatrix((self._rows[i] for i in rows), self.n_cols)

    def delete_column(self, f: int) -> "IntMatrix":
        if not 0 <= f < self.n_cols:
            raise IndexOutOfRange(f"column {f} out of range for {self.n_cols} columns")
        return self.select_columns(j for j in range(self.n_cols) if j != f)

    def delete_row(self, r: int) -> "IntMatrix":
        if not 0 <= r < self.n_rows:
            raise IndexOutOfRange(f"row {r} out of range for {self.n_rows} rows")
        return self.select_rows(i for i in range(self.n_rows) if i != r)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def zero_columns(self) -> list[int]:
        return [j for j in range(self.n_cols) if all(row[j] == 0 for row in self._rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n_cols != other.n_rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntMatrix(
            ([sum(a * b for a, b in zip(row, c)) for c in cols] for row in self._rows),
            other.n_cols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Return ``M v`` for a column vector ``v``."""
        if len(v) != self.n_cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.n_cols} columns")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._rows)

    def left_apply(self, c: Sequence[int]) -> tuple[int, ...]:
        """Return ``c M`` for a row vector ``c``."""
        if len(c) != self.n_rows:
            raise DimensionMismatch(f"vector of length {len(c)} for {self.n_rows} rows")
        return tuple(
            sum(c[i] * self._rows[i][j] for i in range(self.n_rows)) for j in range(self.n_cols)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n_rows, self.n_cols, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, n_cols={self.n_cols})"


def as_matrix(M) -> IntMatrix:
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right == diagonal(diag)`` with unimodular ``left``, ``right``."""

    left: IntMatrix
    diag: tuple[int, ...]
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for a in self.diag if a != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(a for a in self.diag if a != 0)

    def diagonal_matrix(self) -> IntMatrix:
        n, m = self.left.n_rows, self.right.n_rows
        return IntMatrix(([self.diag[i] if i == j else 0 for j in range(m)] for i in range(n)), m)


def _row_add(A: list[list[int]], dst: int, src: int, q: int) -> None:
    if q:
        rs, rd = A[src], A[dst]
        for j in range(len(rd)):
            rd[j] += q * rs[j]


def _col_add(A: list[list[int]], dst: int, src: int, q: int) -> None:
    if q:
        for row in A:
            row[dst] += q * row[src]


def _swap_cols(A: list[list[int]], a: int, b: int) -> None:
    if a != b:
        for row in A:
            row[a], row[b] = row[b], row[a]


def snf(M) -> SmithDecomposition:
    """Smith normal form by elementary operations, pivoting on the smallest entry."""
    M = as_matrix(M)
    n, m = M.shape
    D = M.tolist()
    L = IntMatrix.identity(n).tolist()
    R = IntMatrix.identity(m).tolist()

    for t in range(min(n, m)):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        D[t], D[best[0]] = D[best[0]], D[t]
        L[t], L[best[0]] = L[best[0]], L[t]
        _swap_cols(D, t, best[1])
        _swap_cols(R, t, best[1])

        while True:
            # Bring the smallest nonzero entry of row t / column t to (t, t).
            i_min = min(range(t, n), key=lambda i: abs(D[i][t]) if D[i][t] else float("inf"))
            j_min = min(range(t, m), key=lambda j: abs(D[t][j]) if D[t][j] else float("inf"))
            if D[i_min][t] and abs(D[i_min][t]) < abs(D[t][t]):
                D[t], D[i_min] = D[i_min], D[t]
                L[t], L[i_min] = L[i_min], L[t]
            elif D[t][j_min] and abs(D[t][j_min]) < abs(D[t][t]):
                _swap_cols(D, t, j_min)
                _swap_cols(R, t, j_min)
            p = D[t][t]
            for i in range(t + 1, n):
                q = D[i][t] // p
                _row_add(D, i, t, -q)
                _row_add(L, i, t, -q)
            for j in range(t + 1, m):
                q = D[t][j] // p
                _col_add(D, j, t, -q)
                _col_add(R, j, t, -q)
            if any(D[i][t] for i in range(t + 1, n)) or any(D[t][j] for j in range(t + 1, m)):
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            _row_add(D, t, bad, 1)
            _row_add(L, t, bad, 1)

        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            L[t] = [-x for x in L[t]]

    diag = tuple(D[i][i] for i in range(min(n, m)))
    return SmithDecomposition(IntMatrix(L, n), diag, IntMatrix(R, m))


def invariant_factors(M) -> tuple[int, ...]:
    """Positive invariant factors ``a_1 | a_2 | ... | a_rho``."""
    return snf(M).invariant_factors


def rank(M) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    M = as_matrix(M)
    A = M.tolist()
    n, m = M.shape
    r = 0
    for j in range(m):
        piv = next((i for i in range(r, n) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][j]
        for i in range(r + 1, n):
            if A[i][j]:
                a = A[i][j]
                A[i] = [p * x - a * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == n:
            break
    return r


def determinant(M) -> int:
    """Determinant of a square integer matrix (Bareiss elimination)."""
    M = as_matrix(M)
    n = M.n_rows
    if n != M.n_cols:
        raise DimensionMismatch(f"determinant of a non-square {M.shape} matrix")
    if n == 0:
        return 1
    A = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def gamma(M, k: int) -> int:
    """Product of ``gcd(k, a_i)`` over the invariant factors of ``M``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return gamma_from_factors(invariant_factors(M), k)


def gamma_from_factors(factors: Iterable[int], k: int) -> int:
    out = 1
    for a in factors:
        out *= gcd(k, a)
    return out


def count_kernel_mod(M, k: int) -> int:
    """``|{v in Z_k^m : M v = 0 mod k}| = k^(m - rho) * gamma(M, k)``."""
    M = as_matrix(M)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    factors = invariant_factors(M)
    return k ** (M.n_cols - len(factors)) * gamma_from_factors(factors, k)


def hermite_rows(rows: Sequence[Sequence[int]], n_cols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``; zero rows are dropped.  The result is unique for the
    lattice, which is what makes kernel bases canonical.
    """
    A = [list(r) for r in rows]
    out_rank = 0
    for j in range(n_cols):
        while True:
            nz = [i for i in range(out_rank, len(A)) if A[i][j]]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(A[i][j]))
            A[out_rank], A[i_min] = A[i_min], A[out_rank]
            p = A[out_rank][j]
            done = True
            for i in range(out_rank + 1, len(A)):
                if A[i][j]:
                    _row_add(A, i, out_rank, -(A[i][j] // p))
                    if A[i][j]:
                        done = False
            if done:
                break
        if out_rank < len(A) and A[out_rank][j]:
            if A[out_rank][j] < 0:
                A[out_rank] = [-x for x in A[out_rank]]
            p = A[out_rank][j]
            for i in range(out_rank):
                _row_add(A, i, out_rank, -(A[i][j] // p))
            out_rank += 1
    return [row for row in A[:out_rank]]


def canonical_basis(rows: Sequence[Sequence[int]], n_cols: int) -> IntMatrix:
    """Canonical Z-basis of a lattice: Hermite rows, sorted lexicographically."""
    basis = sorted(hermite_rows(rows, n_cols))
    return IntMatrix(basis, n_cols)


def kernel_basis(M) -> IntMatrix:
    """Z-basis (as rows) of ``{v in Z^m : M v = 0}``, canonicalized.

    The trailing columns of the right SNF transform span the kernel, and
    they are part of a unimodular matrix, so the lattice they span is
    saturated.
    """
    M = as_matrix(M)
    dec = snf(M)
    rho = dec.rank
    m = M.n_cols
    gens = [[dec.right[i, j] for i in range(m)] for j in range(rho, m)]
    return canonical_basis(gens, m)


def integer_solve(M, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some integer ``x`` with ``M x = b``, or ``None`` when no solution exists."""
    M = as_matrix(M)
    if len(b) != M.n_rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {M.n_rows} rows")
    dec = snf(M)
    Lb = dec.left.apply(list(b))
    y = [0] * M.n_cols
    for i, value in enumerate(Lb):
        a = dec.diag[i] if i < len(dec.diag) else 0
        if a == 0:
            if value != 0:
                return None
        else:
            if value % a:
                return None
            y[i] = value // a
    x = dec.right.apply(y)
    assert M.apply(x) == tuple(b)
    return x


def pivot(M, r: int, f: int) -> IntMatrix:
    """Eliminate on the unit entry ``M[r, f]`` and drop row ``r`` and column ``f``."""
    M = as_matrix(M)
    if not (0 <= r < M.n_rows and 0 <= f < M.n_cols):
        raise IndexOutOfRange(f"pivot position ({r}, {f}) outside a {M.shape} matrix")
    u = M[r, f]
    if u not in (1, -1):
        raise NonUnitPivot(f"entry ({r}, {f}) is {u}, not a unit")
    prow = M.row(r)
    out = []
    for i, row in enumerate(M.rows):
        if i == r:
            continue
        # 1/u == u for a unit
        q = row[f] * u
        out.append([row[j] - q * prow[j] for j in range(M.n_cols) if j != f])
    return IntMatrix(out, M.n_cols - 1)


def column_basis(M) -> list[int]:
    """Indices of the leftmost maximal set of linearly independent columns."""
    M = as_matrix(M)
    chosen: list[int] = []
    current = 0
    for j in range(M.n_cols):
        if rank(M.select_columns(chosen + [j])) > current:
            chosen.append(j)
            current += 1
    return chosen


def _rational_inverse(B: list[list[int]]) -> list[list[Fraction]]:
    n = len(B)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(B)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                q = A[i][c]
                A[i] = [x - q * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def tu_kernel_basis(M, return_order: bool = False):
    """Kernel basis ``[(B^-1 C)^T | -I]`` of a totally unimodular matrix.

    ``B`` is a column basis moved to the front (restricted to an
    independent set of rows when ``M`` is not of full row rank).  The
    returned matrix is in the original column order; with
    ``return_order=True`` the column order used for ``[B | C]`` is returned
    as well.
    """
    from .unimodularity import is_TU
    from .errors import NotTotallyUnimodular

    M = as_matrix(M)
    if not is_TU(M):
        raise NotTotallyUnimodular("tu_kernel_basis needs a totally unimodular matrix")
    m = M.n_cols
    basis_cols = column_basis(M)
    basis_rows = column_basis(M.transpose())
    rho = len(basis_cols)
    others = [j for j in range(m) if j not in basis_cols]
    order = basis_cols + others
    B = [[M[i, j] for j in basis_cols] for i in basis_rows]
    C = [[M[i, j] for j in others] for i in basis_rows]
    Binv = _rational_inverse(B) if rho else []
    BC = [[sum(Binv[i][t] * C[t][j] for t in range(rho)) for j in range(len(others))] for i in range(rho)]
    rows = []
    for j, col in enumerate(others):
        v = [0] * m
        for i in range(rho):
            entry = BC[i][j]
            assert entry.denominator == 1
            v[basis_cols[i]] = int(entry)
        v[col] = -1
        rows.append(v)
    Z = IntMatrix(rows, m)
    return (Z, order) if return_order else Z


@dataclass(frozen=True)
class LinearFeasibilityProblem:
    """``eq_lhs x = eq_rhs`` and ``ineq_lhs x >= ineq_rhs`` (``>`` where strict)."""

    eq_lhs: Sequence[Sequence] = ()
    eq_rhs: Sequence = ()
    ineq_lhs: Sequence[Sequence] = ()
    ineq_rhs: Sequence = ()
    strict_flags: Sequence[bool] = ()
    n_vars: Optional[int] = None

    def __post_init__(self):
        if len(self.eq_lhs) != len(self.eq_rhs):
            raise DimensionMismatch("equality rows and right-hand sides differ in number")
        if len(self.ineq_lhs) != len(self.ineq_rhs):
            raise DimensionMismatch("inequality rows and right-hand sides differ in number")
        flags = tuple(self.strict_flags) if self.strict_flags else (False,) * len(self.ineq_lhs)
        if len(flags) != len(self.ineq_lhs):
            raise DimensionMismatch("strict_flags must have one entry per inequality row")
        object.__setattr__(self, "strict_flags", flags)
        widths = {len(r) for r in self.eq_lhs} | {len(r) for r in self.ineq_lhs}
        if self.n_vars is None:
            if len(widths) > 1:
                raise DimensionMismatch(f"rows of differing widths {sorted(widths)}")
            object.__setattr__(self, "n_vars", widths.pop() if widths else 0)
        elif widths - {self.n_vars}:
            raise DimensionMismatch(f"rows must have width {self.n_vars}")

    def satisfied_by(self, x: Sequence) -> bool:
        for row, b in zip(self.eq_lhs, self.eq_rhs):
            if sum(Fraction(a) * v for a, v in zip(row, x)) != b:
                return False
        for row, b, strict in zip(self.ineq_lhs, self.ineq_rhs, self.strict_flags):
            lhs = sum(Fraction(a) * v for a, v in zip(row, x))
            if lhs < b or (strict and lhs == b):
                return False
        return True


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]] = field(default=None)

    def __bool__(self) -> bool:
        return self.feasible


def _simplex_max(T: list[list[Fraction]], basis: list[int], cost: list[Fraction], allowed: int) -> bool:
    """Maximize ``cost`` over a tableau in canonical form; Bland's rule.

    Only the first ``allowed`` columns may enter.  Returns False if the
    objective is unbounded.
    """
    while True:
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            reduced = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(len(T)))
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return True
        leave = None
        for i, row in enumerate(T):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if leave is None or ratio < leave[0] or (ratio == leave[0] and basis[i] < basis[leave[1]]):
                    leave = (ratio, i)
        if leave is None:
            return False
        _pivot_tableau(T, basis, leave[1], entering)


def _pivot_tableau(T: list[list[Fraction]], basis: list[int], i: int, j: int) -> None:
    p = T[i][j]
    T[i] = [x / p for x in T[i]]
    for r in range(len(T)):
        if r != i and T[r][j] != 0:
            q = T[r][j]
            T[r] = [x - q * y for x, y in zip(T[r], T[i])]
    basis[i] = j


def _lp_maximize(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]):
    """Two-phase simplex for ``max c.x`` s.t. ``A x = b``, ``x >= 0``.

    Returns ``None`` when infeasible, else the optimal (or, if unbounded,
    some feasible) basic solution.
    """
    nvar = len(c)
    rows = len(A)
    T = []
    for i in range(rows):
        sign = -1 if b[i] < 0 else 1
        T.append([sign * a for a in A[i]] + [Fraction(int(r == i)) for r in range(rows)] + [sign * b[i]])
    basis = [nvar + i for i in range(rows)]
    phase1 = [Fraction(0)] * nvar + [Fraction(-1)] * rows
    _simplex_max(T, basis, phase1, nvar + rows)
    if any(T[i][-1] != 0 for i in range(rows) if basis[i] >= nvar):
        return None
    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nvar:
            j = next((j for j in range(nvar) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot_tableau(T, basis, i, j)
        i += 1
    T = [row[:nvar] + [row[-1]] for row in T]
    _simplex_max(T, basis, list(c), nvar)
    x = [Fraction(0)] * nvar
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return x


def rational_feasible(P: LinearFeasibilityProblem) -> Feasibility:
    """Exact decision of a rational system with (possibly strict) inequalities.

    Strict rows get a common margin ``t`` subtracted; the margin is
    maximized subject to ``t <= 1`` and the system is feasible iff the
    optimum is positive.
    """
    N = P.n_vars
    strict = [i for i, s in enumerate(P.strict_flags) if s]
    n_ineq = len(P.ineq_lhs)
    has_margin = bool(strict)
    # columns: p (N), q (N), slacks (n_ineq), [t, u]
    width = 2 * N + n_ineq + (2 if has_margin else 0)
    t_col = 2 * N + n_ineq
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for row, rhs in zip(P.eq_lhs, P.eq_rhs):
        r = [Fraction(a) for a in row]
        A.append(r + [-a for a in r] + [Fraction(0)] * (width - 2 * N))
        b.append(Fraction(rhs))
    for i, (row, rhs) in enumerate(zip(P.ineq_lhs, P.ineq_rhs)):
        r = [Fraction(a) for a in row]
        tail = [Fraction(0)] * (width - 2 * N)
        tail[i] = Fraction(-1)
        if P.strict_flags[i]:
            tail[t_col - 2 * N] = Fraction(-1)
        A.append(r + [-a for a in r] + tail)
        b.append(Fraction(rhs))
    c = [Fraction(0)] * width
    if has_margin:
        bound = [Fraction(0)] * width
        bound[t_col] = Fraction(1)
        bound[t_col + 1] = Fraction(1)
        A.append(bound)
        b.append(Fraction(1))
        c[t_col] = Fraction(1)
    sol = _lp_maximize(A, b, c)
    if sol is None:
        return Feasibility(False)
    if has_margin and sol[t_col] <= 0:
        return Feasibility(False)
    x = tuple(sol[j] - sol[N + j] for j in range(N))
    assert P.satisfied_by(x)
    return Feasibility(True, x)
