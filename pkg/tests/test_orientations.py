import random
from itertools import product

import pytest

from cellcount.errors import HasColoop, HasLoop, IndexOutOfRange, NotTotallyUnimodular, ZeroEntry
from cellcount.complex import from_boundary, matrix_complex
from cellcount.modular_counts import chromatic_ie, flow_ie, tension_qp
from cellcount.orientations import (
    Orientation,
    PartialSignMap,
    compatible_orientations,
    count_C,
    count_Phi,
    count_Psi,
    enumerate_acyclic,
    enumerate_totally_cyclic,
    extends_to_acyclic,
    extends_to_totally_cyclic,
    is_acyclic,
    is_totally_cyclic,
    orientation_from_vector,
    verify_tu_support_corollaries,
)

import cases
import oracles

CYCLE = (1, 1, 1, -1, -1)


def test_pyramid_examples():
    P = cases.pyramid()
    assert is_acyclic(P, (1,) * 5)
    assert not is_acyclic(P, CYCLE)
    assert is_totally_cyclic(P, CYCLE)
    assert not is_totally_cyclic(P, (1,) * 5)
    assert len(enumerate_acyclic(P)) == 30
    assert {str(o) for o in enumerate_totally_cyclic(P)} == {"+++--", "---++"}


def test_rp2_examples():
    X = cases.rp2()
    assert all(is_acyclic(X, (s,)) and not is_totally_cyclic(X, (s,)) for s in (1, -1))


def test_triangle_counts():
    assert len(enumerate_acyclic(cases.k3())) == 6
    assert len(enumerate_totally_cyclic(cases.k3())) == 2


def test_orientation_length_checked():
    with pytest.raises(IndexOutOfRange):
        is_acyclic(cases.pyramid(), (1, 1))


def test_orientation_types():
    assert str(Orientation((1, -1, 1))) == "+-+"
    with pytest.raises(ValueError):
        Orientation((1, 0))
    with pytest.raises(ValueError):
        PartialSignMap({0: 2})
    p = PartialSignMap({2: -1, 0: 1})
    assert p.domain == (0, 2) and p.agrees_with((1, 5, -1))


def test_orientation_from_vector():
    assert str(orientation_from_vector([2, 4, -1, 6, -1])) == "++-+-"
    assert str(orientation_from_vector([1] * 4)) == "++++"
    with pytest.raises(ZeroEntry):
        orientation_from_vector([0, 1])


def test_compatible_orientations_count():
    rng = random.Random(4)
    for _ in range(20):
        v = [rng.randint(-2, 2) for _ in range(5)]
        comp = compatible_orientations(v)
        assert len(comp) == 2 ** v.count(0)
        assert all(x * s >= 0 for o in comp for x, s in zip(v, o.signs))


@pytest.mark.parametrize("make", [cases.pyramid, cases.rp2, cases.k3, cases.k4, cases.flow_example])
def test_lp_matches_fourier_motzkin(make):
    X = make()
    M = X.boundary.tolist()
    for eps in product((1, -1), repeat=X.m):
        assert is_acyclic(X, eps) == oracles.fm_acyclic(M, eps)
        assert is_totally_cyclic(X, eps) == oracles.fm_totally_cyclic(M, eps)


def test_lp_matches_fourier_motzkin_random():
    rng = random.Random(12)
    for _ in range(10):
        M = cases.random_matrix(rng, rng.randint(1, 3), rng.randint(1, 4), -2, 2)
        X = matrix_complex(M)
        for eps in product((1, -1), repeat=X.m):
            assert is_acyclic(X, eps) == oracles.fm_acyclic(M, eps)
            assert is_totally_cyclic(X, eps) == oracles.fm_totally_cyclic(M, eps)


def test_totally_cyclic_excludes_acyclic():
    for make in (cases.pyramid, cases.k3, cases.k4, cases.flow_example):
        X = make()
        acyc = {o.signs for o in enumerate_acyclic(X)}
        assert not acyc & {o.signs for o in enumerate_totally_cyclic(X)}


def test_proper_colorings_give_acyclic_orientations():
    rng = random.Random(50)
    for make in (cases.pyramid, cases.k4):
        X = make()
        found = 0
        while found < 25:
            c = [rng.randint(-5, 5) for _ in range(X.n)]
            v = X.boundary.left_apply(c)
            if 0 in v:
                continue
            found += 1
            assert is_acyclic(X, orientation_from_vector(v))


def test_extension_examples():
    P = cases.pyramid()
    assert extends_to_acyclic(P, {}) and extends_to_totally_cyclic(P, {})
    sigma = {"123": 1, "134": 1, "145": 1, "125": 1, "2345": 1}
    assert extends_to_acyclic(P, sigma)
    full = dict(zip(P.facet_labels, CYCLE))
    assert not extends_to_acyclic(P, full)
    assert extends_to_totally_cyclic(P, full)
    # fixing the first three facets to + forces the last two to - for total cyclicity
    assert not extends_to_totally_cyclic(P, {0: 1, 3: 1})


def test_modular_pair_spot_values():
    assert count_Phi(cases.pyramid(), 2) == 3
    assert count_Phi(cases.pyramid(), 1) == 2
    assert count_Phi(cases.flow_example(), 2) == 4
    assert count_Psi(cases.rp2(), 2) == 2
    assert count_C(cases.rp2(), 2) == 4


def test_pair_counts_need_hypotheses():
    loopy = from_boundary("loopy", ["a"], ["f", "g"], [[0, 1]])
    with pytest.raises(HasLoop):
        count_C(loopy, 2)
    with pytest.raises(HasLoop):
        count_Psi(loopy, 2)
    with pytest.raises(HasColoop):
        count_Phi(cases.rp2(), 2)


@pytest.mark.parametrize("make", [cases.rp2, cases.k3, cases.flow_example])
def test_pair_counts_match_naive(make):
    X = make()
    M = X.boundary.tolist()
    acyc = [o.signs for o in enumerate_acyclic(X)]
    cyc = [o.signs for o in enumerate_totally_cyclic(X)]
    for k in range(1, 4):
        assert count_C(X, k) == oracles.naive_count_C(M, X.n, X.m, k, acyc)
        assert count_Psi(X, k) == oracles.naive_count_Psi(M, X.m, k, acyc)
        if cyc:
            assert count_Phi(X, k) == oracles.naive_count_Phi(M, X.m, k, cyc)


@pytest.mark.parametrize("make", [cases.rp2, cases.pyramid, cases.k3, cases.k4])
def test_modular_reciprocity(make):
    X = make()
    rho = X.rank
    chi, tau = chromatic_ie(X), tension_qp(X)
    for k in range(1, 4):
        assert count_C(X, k) == (-1) ** X.n * chi(-k)
        assert count_Psi(X, k) == (-1) ** rho * tau(-k)
    if X.m > rho:
        phi = flow_ie(X)
        for k in range(1, 4):
            assert count_Phi(X, k) == (-1) ** (X.m - rho) * phi(-k)


@pytest.mark.parametrize("make", [cases.pyramid, cases.k4, cases.k3])
def test_tu_support_corollaries(make):
    X = make()
    for k in (2, 3):
        rep = verify_tu_support_corollaries(X, k)
        assert rep.passed, rep.failures


def test_support_corollaries_need_tu():
    with pytest.raises(NotTotallyUnimodular):
        verify_tu_support_corollaries(cases.rp2(), 2)
