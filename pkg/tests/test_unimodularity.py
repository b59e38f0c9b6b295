import random

import pytest

from cellcount.errors import SizeLimitExceeded
from cellcount.exact_linalg import IntMatrix, invariant_factors, pivot
from cellcount.unimodularity import classify, is_ISH, is_QU, is_SQU, is_TU, period_bound, squ_witness, tu_witness

import cases

PYR = cases.pyramid().boundary
INVERTIBLE = [[3, 2], [4, 3]]


def test_tu_examples():
    assert is_TU(PYR)
    assert not is_TU(INVERTIBLE)
    assert not is_TU([[2]])
    assert tu_witness([[1, 1], [-1, 1]]) == ((0, 1), (0, 1), 2)


def test_tu_size_guard():
    with pytest.raises(SizeLimitExceeded):
        is_TU(IntMatrix.zeros(9, 9))
    assert is_TU(IntMatrix.zeros(9, 9), max_dim=9)


def test_qu_examples():
    assert not is_QU([[2]])
    assert is_QU(INVERTIBLE)
    assert is_QU(PYR)
    assert is_QU([[1, 2], [2, 4]])


def test_squ_examples():
    assert is_SQU(INVERTIBLE)
    assert not is_SQU([[1, 2], [2, 4]])
    assert squ_witness([[1, 2], [2, 4]]) == (1,)
    assert is_SQU(PYR)


def test_ish_examples():
    assert is_ISH([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert is_ISH([[0, 1, 0], [0, 0, 0], [1, 0, 0], [0, 0, 1]])
    assert not is_ISH(INVERTIBLE)
    assert is_ISH(PYR)
    # a unit entry alone is not enough: deleting it leaves [[2]]
    assert not is_ISH([[1, 2]])


def test_period_bound_examples():
    assert period_bound([[2]]) == 2
    assert period_bound([[1, 2], [2, 4]]) == 2
    assert period_bound(PYR) == 1
    assert period_bound([[2, 0], [0, 3]]) == 6


def test_empty_matrix_conventions():
    E = IntMatrix.zeros(3, 0)
    rep = classify(E)
    assert rep.is_tu and rep.is_qu and rep.is_squ and rep.is_ish and rep.period_bound == 1


def test_hierarchy_on_random_matrices():
    rng = random.Random(50)
    seen = {"tu": 0, "squ": 0, "ish": 0, "qu": 0}
    for _ in range(50):
        M = cases.random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), -3, 3)
        rep = classify(M)
        assert rep.hierarchy_holds(), (M, rep)
        for key, flag in (("tu", rep.is_tu), ("squ", rep.is_squ), ("ish", rep.is_ish), ("qu", rep.is_qu)):
            seen[key] += flag
    # the sample is not degenerate
    assert seen["qu"] > seen["tu"] >= 1


def test_hierarchy_on_sparse_random_matrices():
    # sparse small entries give many TU and ISH examples
    rng = random.Random(51)
    for _ in range(50):
        M = cases.random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), -1, 1)
        assert classify(M).hierarchy_holds()


def test_qu_is_trivial_torsion():
    rng = random.Random(52)
    for _ in range(40):
        M = cases.random_matrix(rng, 3, 3, -3, 3)
        prod = 1
        for a in invariant_factors(M):
            prod *= a
        assert is_QU(M) == (prod == 1)


def test_arbitrary_pivot_sequences_preserve_tu():
    rng = random.Random(53)
    M = PYR
    for _ in range(30):
        M = PYR
        while M.n_cols:
            units = [(r, f) for r in range(M.n_rows) for f in range(M.n_cols) if M[r, f] in (1, -1)]
            if not units:
                assert M.is_zero()
                break
            M = pivot(M, *rng.choice(units))
            assert is_TU(M)


def test_classify_json():
    assert classify(PYR).to_json() == {"tu": True, "squ": True, "qu": True, "ish": True, "period_bound": 1}
    assert classify(INVERTIBLE).to_json() == {"tu": False, "squ": True, "qu": True, "ish": False, "period_bound": 1}
