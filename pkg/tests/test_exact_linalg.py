import random
from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellcount.errors import DimensionMismatch, IndexOutOfRange, NonUnitPivot, NotTotallyUnimodular
from cellcount.exact_linalg import (
    IntMatrix,
    LinearFeasibilityProblem,
    count_kernel_mod,
    determinant,
    gamma,
    integer_solve,
    invariant_factors,
    kernel_basis,
    pivot,
    rank,
    rational_feasible,
    snf,
    tu_kernel_basis,
)
from cellcount.unimodularity import is_TU

import cases
import oracles

PYR = cases.pyramid().boundary


def matrices(max_rows=5, max_cols=6, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda n: st.integers(1, max_cols).flatmap(
            lambda m: st.lists(st.lists(st.integers(lo, hi), min_size=m, max_size=m), min_size=n, max_size=n)
        )
    )


# IntMatrix


def test_shape_is_kept_for_empty_dimensions():
    assert IntMatrix.zeros(3, 0).shape == (3, 0)
    assert IntMatrix([], 4).shape == (0, 4)
    assert IntMatrix.zeros(3, 0).transpose().shape == (0, 3)


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatch):
        IntMatrix([[1, 2], [3]])


def test_big_entries_do_not_overflow():
    M = IntMatrix([[10**30, 1], [1, 0]])
    assert determinant(M) == -1
    assert invariant_factors(M) == (1, 1)


def test_select_out_of_range():
    with pytest.raises(IndexOutOfRange):
        PYR.select_columns([5])


# Smith normal form


@pytest.mark.parametrize(
    "M, diag, rk",
    [([[2]], (2,), 1), ([[1, 2], [2, 4]], (1, 0), 1), (PYR, (1, 1, 1, 1, 0), 4)],
)
def test_snf_examples(M, diag, rk):
    dec = snf(M)
    assert dec.diag == diag
    assert dec.rank == rk


def test_invariant_factor_examples():
    assert invariant_factors(IntMatrix.identity(3)) == (1, 1, 1)
    assert invariant_factors([[2]]) == (2,)
    assert invariant_factors([[1, 2], [2, 4]]) == (1,)
    assert invariant_factors(PYR) == (1, 1, 1, 1)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_reconstruction_and_divisibility(rows):
    M = IntMatrix(rows)
    dec = snf(M)
    assert dec.left @ M @ dec.right == dec.diagonal_matrix()
    assert abs(determinant(dec.left)) == 1
    assert abs(determinant(dec.right)) == 1
    nz = [a for a in dec.diag if a]
    assert all(a > 0 for a in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # zeros trail
    assert list(dec.diag) == nz + [0] * (len(dec.diag) - len(nz))


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4, -3, 3))
def test_invariant_factors_match_minor_gcds(rows):
    assert list(invariant_factors(rows)) == oracles.minor_gcd_factors(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_invariant_factors_transpose_invariant(rows):
    M = IntMatrix(rows)
    assert invariant_factors(M) == invariant_factors(M.transpose())


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_matches_rational_rank(rows):
    assert rank(rows) == oracles.rational_rank(rows)


@settings(max_examples=80, deadline=None)
@given(matrices(4, 4, -5, 5))
def test_determinant_matches_oracle(rows):
    n = min(len(rows), len(rows[0]))
    sq = [r[:n] for r in rows[:n]]
    assert determinant(sq) == oracles.det(sq)


# gamma and modular kernels


def test_gamma_examples():
    assert gamma([[2]], 3) == 1
    assert gamma([[2]], 4) == 2
    assert gamma(IntMatrix.identity(3), 7) == 1
    assert gamma(PYR, 6) == 1


def test_count_kernel_mod_examples():
    assert count_kernel_mod([[2]], 4) == 2
    assert count_kernel_mod(IntMatrix.identity(2), 5) == 1
    assert count_kernel_mod(PYR, 3) == 3


def test_count_kernel_mod_exhaustive():
    rng = random.Random(11)
    for _ in range(40):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        M = cases.random_matrix(rng, n, m, -4, 4)
        for k in range(1, 7):
            assert count_kernel_mod(M, k) == oracles.kernel_count_mod(M, k)
    for k in range(1, 5):
        assert count_kernel_mod(PYR, k) == oracles.kernel_count_mod(PYR.tolist(), k)


# kernels


def test_kernel_basis_examples():
    assert kernel_basis(PYR).tolist() == [[1, 1, 1, -1, -1]]
    assert kernel_basis([[2]]).shape == (0, 1)
    K = kernel_basis([[1, 2], [2, 4]])
    assert K.tolist() in ([[2, -1]], [[-2, 1]])


@settings(max_examples=60, deadline=None)
@given(matrices(3, 5, -3, 3))
def test_kernel_basis_spans_integer_kernel(rows):
    M = IntMatrix(rows)
    K = kernel_basis(M)
    assert K.n_rows == M.n_cols - rank(M)
    for w in K.rows:
        assert not any(M.apply(w))
    # every small integer null vector is an integer combination of the basis rows
    for v in oracles.rational_nullspace(rows, M.n_cols):
        den = lcm(*(x.denominator for x in v))
        iv = [int(x * den) for x in v]
        assert integer_solve(K.transpose(), iv) is not None


def test_kernel_basis_is_saturated():
    # [[2, 2]] kernel is spanned by [1, -1], not only by [2, -2]
    assert kernel_basis([[2, 2]]).tolist() == [[1, -1]]


def test_tu_kernel_basis_examples():
    K3 = cases.k3().boundary
    Z = tu_kernel_basis(K3)
    assert Z.n_rows == 1
    assert not any(K3.apply(Z.row(0)))
    assert sorted(abs(x) for x in Z.row(0)) == [1, 1, 1]
    assert tu_kernel_basis([[1, 0, 0], [0, 1, 0]]).tolist() == [[0, 0, -1]]
    Zp = tu_kernel_basis(PYR)
    assert Zp.tolist() in ([[1, 1, 1, -1, -1]], [[-1, -1, -1, 1, 1]])


def test_tu_kernel_basis_rejects_non_tu():
    with pytest.raises(NotTotallyUnimodular):
        tu_kernel_basis([[2, 1]])


# integer solving


def test_integer_solve_examples():
    assert integer_solve([[2]], [4]) == (2,)
    assert integer_solve([[2]], [3]) is None
    b = PYR.apply([1, 0, 0, 0, 0])
    x = integer_solve(PYR, b)
    assert x is not None and PYR.apply(x) == b


def test_integer_solve_dimension_check():
    with pytest.raises(DimensionMismatch):
        integer_solve([[1, 2]], [1, 2])


def _rational_solvable(M, b):
    P = LinearFeasibilityProblem(M.tolist(), list(b), n_vars=M.n_cols)
    return rational_feasible(P).feasible


def test_tu_rational_iff_integer_solvable():
    rng = random.Random(5)
    for M in cases.random_tu(20):
        for _ in range(5):
            b = [rng.randint(-3, 3) for _ in range(M.n_rows)]
            assert _rational_solvable(M, b) == (integer_solve(M, b) is not None)


def test_non_tu_rational_without_integer_solution():
    M = IntMatrix([[2]])
    assert _rational_solvable(M, [1]) and integer_solve(M, [1]) is None


# pivoting


def test_pivot_examples():
    assert pivot(PYR, 1, 0).tolist() == cases.CONTRACTED
    assert pivot(IntMatrix.identity(2), 0, 0).tolist() == [[1]]
    assert pivot([[1, 2], [2, 4]], 0, 0).tolist() == [[0]]


def test_pivot_errors():
    with pytest.raises(NonUnitPivot):
        pivot([[2]], 0, 0)
    with pytest.raises(IndexOutOfRange):
        pivot([[1]], 1, 0)


def test_pivot_preserves_tu():
    rng = random.Random(3)
    for M in cases.random_tu(20, seed=19):
        while M.n_cols and M.n_rows:
            units = [(r, f) for r in range(M.n_rows) for f in range(M.n_cols) if M[r, f] in (1, -1)]
            if not units:
                break
            M = pivot(M, *rng.choice(units))
            assert is_TU(M)


# rational feasibility


def test_feasibility_examples():
    strict_both = LinearFeasibilityProblem(ineq_lhs=[[1], [-1]], ineq_rhs=[0, 0], strict_flags=[True, True])
    assert not rational_feasible(strict_both)
    pos = LinearFeasibilityProblem(PYR.tolist(), [0] * 8, [[int(i == j) for j in range(5)] for i in range(5)], [1] * 5)
    assert not rational_feasible(pos)
    eps = [1, 1, 1, -1, -1]
    cyc = LinearFeasibilityProblem(
        PYR.tolist(), [0] * 8, [[eps[i] if i == j else 0 for j in range(5)] for i in range(5)], [1] * 5
    )
    res = rational_feasible(cyc)
    assert res.feasible
    w = res.witness
    assert w[0] == w[1] == w[2] == -w[3] == -w[4] >= 1


def test_feasibility_nonstrict_boundary():
    P = LinearFeasibilityProblem(ineq_lhs=[[1], [-1]], ineq_rhs=[0, 0])
    res = rational_feasible(P)
    assert res.feasible and res.witness == (Fraction(0),)


@settings(max_examples=120, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda nv: st.tuples(
            st.lists(st.lists(st.integers(-3, 3), min_size=nv, max_size=nv), max_size=2),
            st.lists(st.lists(st.integers(-3, 3), min_size=nv, max_size=nv), min_size=1, max_size=4),
            st.lists(st.integers(-3, 3), min_size=6, max_size=6),
            st.lists(st.booleans(), min_size=4, max_size=4),
            st.just(nv),
        )
    )
)
def test_feasibility_matches_fourier_motzkin(data):
    eq, ineq, rhs, flags, nv = data
    eq_rhs = rhs[: len(eq)]
    ineq_rhs = rhs[2: 2 + len(ineq)]
    strict = flags[: len(ineq)]
    P = LinearFeasibilityProblem(eq, eq_rhs, ineq, ineq_rhs, strict, n_vars=nv)
    res = rational_feasible(P)
    assert res.feasible == oracles.fm_feasible(eq, eq_rhs, ineq, ineq_rhs, strict, nv)
    if res.feasible:
        assert P.satisfied_by(res.witness)
