import random

import pytest

from cellcount.complex import from_boundary, matrix_complex
from cellcount.errors import PeriodSearchExhausted
from cellcount.integral_counts import (
    closed_pairs_chromatic,
    closed_pairs_flow,
    closed_pairs_tension,
    fit_integral_qp,
    has_coloop,
    has_loop,
    integral_chromatic,
    integral_flow,
    integral_tension,
)
from cellcount.orientations import enumerate_acyclic, enumerate_totally_cyclic
from cellcount.quasipoly import K

import cases
import oracles


def test_rp2_examples():
    X = cases.rp2()
    assert [integral_chromatic(X, k) for k in range(1, 6)] == [2 * k - 2 for k in range(1, 6)]
    assert [integral_tension(X, k) for k in range(1, 6)] == [2 * k - 2 for k in range(1, 6)]
    assert [integral_flow(X, k) for k in range(1, 6)] == [0] * 5


def test_small_examples():
    # palette {-1, 0, 1} with three distinct vertex values: 3! colorings
    assert integral_chromatic(cases.k3(), 2) == 6
    assert integral_chromatic(cases.pyramid(), 1) == 0
    assert [integral_flow(cases.pyramid(), k) for k in range(1, 6)] == [2 * k - 2 for k in range(1, 6)]


def test_k_must_be_positive():
    with pytest.raises(ValueError):
        integral_chromatic(cases.rp2(), 0)


@pytest.mark.parametrize("make", [cases.rp2, cases.k3, cases.flow_example, cases.pyramid])
def test_counts_match_naive(make):
    X = make()
    M = X.boundary.tolist()
    for k in range(1, 4):
        if X.n <= 5:
            assert integral_chromatic(X, k) == oracles.naive_integral_chromatic(M, X.n, X.m, k)
        assert integral_flow(X, k) == oracles.naive_integral_flow(M, X.m, k)
        assert integral_tension(X, k) == oracles.naive_integral_tension(M, X.m, k)


def test_random_counts_match_naive():
    rng = random.Random(31)
    for _ in range(10):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        X = matrix_complex(cases.random_matrix(rng, n, m, -2, 2))
        M = X.boundary.tolist()
        for k in (1, 2, 3):
            assert integral_chromatic(X, k) == oracles.naive_integral_chromatic(M, n, m, k)
            assert integral_flow(X, k) == oracles.naive_integral_flow(M, m, k)
            assert integral_tension(X, k) == oracles.naive_integral_tension(M, m, k)


def test_fit_examples():
    f = fit_integral_qp(cases.rp2(), "chromatic")
    assert f.quasipolynomial == 2 * K - 2 and f.accepted_period == 1
    assert f.period_is_heuristic
    assert fit_integral_qp(cases.pyramid(), "flow").quasipolynomial == 2 * K - 2
    assert fit_integral_qp(cases.k3(), "chromatic").quasipolynomial.degree <= 3
    data = f.to_json()
    assert data["accepted_period"] == 1 and data["degree_bound"] == 1


def test_pyramid_chromatic_fit():
    f = fit_integral_qp(cases.pyramid(), "chromatic")
    q = f.quasipolynomial
    assert q.degree <= 8 and q(1) == 0
    assert q(2) == integral_chromatic(cases.pyramid(), 2)


def test_fit_finds_period_two_and_can_be_exhausted():
    # flows of [[1, 2]] are multiples of (2, -1): the count is 2 * floor((k - 1) / 2)
    X = from_boundary("t", ["a"], ["f", "g"], [[1, 2]])
    f = fit_integral_qp(X, "flow")
    assert f.accepted_period == 2
    assert [f.quasipolynomial(k) for k in range(1, 8)] == [2 * ((k - 1) // 2) for k in range(1, 8)]
    with pytest.raises(PeriodSearchExhausted):
        fit_integral_qp(X, "flow", max_period=1)


def test_closed_pair_examples():
    assert closed_pairs_chromatic(cases.rp2(), 1) == 4
    assert closed_pairs_flow(cases.pyramid(), 1) == 4
    P = cases.pyramid()
    assert closed_pairs_chromatic(P, 0) == 30
    assert closed_pairs_flow(P, 0) == 2
    assert closed_pairs_tension(cases.k3(), 0) == 6


@pytest.mark.parametrize("make", [cases.rp2, cases.k3, cases.flow_example])
def test_closed_pairs_match_naive(make):
    from itertools import product

    X = make()
    M = X.boundary.tolist()
    acyc = [o.signs for o in enumerate_acyclic(X)]
    cyc = [o.signs for o in enumerate_totally_cyclic(X)]
    null = oracles.rational_nullspace(M, X.m)
    for k in range(0, 3):
        box = range(-k, k + 1)
        rows = [[sum(c[i] * M[i][f] for i in range(X.n)) for f in range(X.m)] for c in product(box, repeat=X.n)]
        flows = [w for w in product(box, repeat=X.m) if all(sum(a * b for a, b in zip(r, w)) == 0 for r in M)]
        tens = [p for p in product(box, repeat=X.m) if all(sum(a * b for a, b in zip(p, w)) == 0 for w in null)]
        assert closed_pairs_chromatic(X, k) == _weighted(rows, acyc)
        assert closed_pairs_flow(X, k) == _weighted(flows, cyc)
        assert closed_pairs_tension(X, k) == _weighted(tens, acyc)


def _weighted(vectors, orientations):
    # each vector counts once per orientation it is compatible with
    return sum(1 for v in vectors for e in orientations if all(x * s >= 0 for x, s in zip(v, e)))


def test_counts_are_monotone():
    X = cases.k3()
    for counter in (integral_chromatic, integral_tension, integral_flow):
        vals = [counter(X, k) for k in range(1, 6)]
        assert vals == sorted(vals)


def test_loop_and_coloop_vanishing():
    loopy = from_boundary("loopy", ["a", "b"], ["f", "g"], [[0, 1], [0, 1]])
    assert has_loop(loopy) and not has_coloop(cases.pyramid())
    assert all(integral_tension(loopy, k) == 0 for k in range(1, 5))
    assert has_coloop(cases.rp2())
    assert all(integral_flow(cases.rp2(), k) == 0 for k in range(1, 5))
