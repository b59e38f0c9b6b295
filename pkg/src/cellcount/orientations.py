"""Acyclic and totally cyclic orientations, and the modular reciprocity pair counts.

Both orientation properties are decided by exact linear feasibility. Pair
counts combine a vectorized enumeration of Z_k colorings, tensions or flows
with the number of admissible sign maps on each zero set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from . import limits
from ._lattice import box_points, zero_masks
from .complex import CellComplex, loops_and_coloops
from .errors import HasColoop, HasLoop, IndexOutOfRange, NotTotallyUnimodular, ZeroEntry
from .exact_linalg import IntMatrix, LinearFeasibilityProblem, pivot, rational_feasible
from .modular_counts import zk_flows, zk_span_generators
from .report import VerificationReport
from .unimodularity import is_TU


@dataclass(frozen=True)
class Orientation:
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"orientation entries must be +1 or -1, got {self.signs}")

    def __len__(self) -> int:
        return len(self.signs)

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass(frozen=True)
class PartialSignMap:
    """Signs on a subset of the facets, keyed by facet index."""

    signs: tuple[tuple[int, int], ...]

    def __init__(self, signs: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        items = signs.items() if isinstance(signs, Mapping) else signs
        pairs = tuple(sorted((int(f), int(s)) for f, s in items))
        if any(s not in (1, -1) for _, s in pairs):
            raise ValueError("partial sign map entries must be +1 or -1")
        if len({f for f, _ in pairs}) != len(pairs):
            raise ValueError("facet repeated in partial sign map")
        object.__setattr__(self, "signs", pairs)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(f for f, _ in self.signs)

    def agrees_with(self, eps: Sequence[int]) -> bool:
        return all(eps[f] == s for f, s in self.signs)


def _signs(eps) -> tuple[int, ...]:
    return eps.signs if isinstance(eps, Orientation) else tuple(eps)


def _check_length(M: IntMatrix, eps: tuple[int, ...]) -> None:
    if len(eps) != M.n_cols:
        raise IndexOutOfRange(f"orientation of length {len(eps)} for {M.n_cols} facets")


@lru_cache(maxsize=100_000)
def _acyclic(M: IntMatrix, eps: tuple[int, ...]) -> bool:
    m = M.n_cols
    eq = [[M[i, j] * eps[j] for j in range(m)] for i in range(M.n_rows)]
    eq.append([1] * m)
    rhs = [0] * M.n_rows + [1]
    ineq = [[int(i == j) for j in range(m)] for i in range(m)]
    P = LinearFeasibilityProblem(eq, rhs, ineq, [0] * m, n_vars=m)
    return not rational_feasible(P).feasible


@lru_cache(maxsize=100_000)
def _totally_cyclic(M: IntMatrix, eps: tuple[int, ...]) -> bool:
    m = M.n_cols
    eq = [list(row) for row in M.rows]
    ineq = [[eps[i] if i == j else 0 for j in range(m)] for i in range(m)]
    P = LinearFeasibilityProblem(eq, [0] * M.n_rows, ineq, [1] * m, n_vars=m)
    return rational_feasible(P).feasible


def is_acyclic(X: Union[CellComplex, IntMatrix], eps) -> bool:
    """No nonzero ``eps``-nonnegative flow exists."""
    M = X.boundary if isinstance(X, CellComplex) else X
    eps = _signs(eps)
    _check_length(M, eps)
    return _acyclic(M, eps)


def is_totally_cyclic(X: Union[CellComplex, IntMatrix], eps) -> bool:
    """Some flow ``w`` has ``eps_f w_f > 0`` for every facet (scaled to ``>= 1``)."""
    M = X.boundary if isinstance(X, CellComplex) else X
    eps = _signs(eps)
    _check_length(M, eps)
    return _totally_cyclic(M, eps)


@lru_cache(maxsize=1024)
def _enumerate(M: IntMatrix, which: str) -> tuple[tuple[int, ...], ...]:
    test = _acyclic if which == "acyclic" else _totally_cyclic
    return tuple(eps for eps in product((1, -1), repeat=M.n_cols) if test(M, eps))


def enumerate_acyclic(X: CellComplex) -> list[Orientation]:
    limits.check_subsets(X.m, "orientations")
    return [Orientation(e) for e in _enumerate(X.boundary, "acyclic")]


def enumerate_totally_cyclic(X: CellComplex) -> list[Orientation]:
    limits.check_subsets(X.m, "orientations")
    return [Orientation(e) for e in _enumerate(X.boundary, "totally_cyclic")]


def orientation_from_vector(v: Sequence[int]) -> Orientation:
    """Componentwise sign of a nowhere-zero vector."""
    for i, x in enumerate(v):
        if x == 0:
            raise ZeroEntry(f"entry {i} is zero")
    return Orientation(tuple(1 if x > 0 else -1 for x in v))


def compatible_orientations(v: Sequence[int]) -> list[Orientation]:
    """All ``eps`` with ``eps_f v_f >= 0``; there are ``2^(#zeros)`` of them."""
    choices = [(1, -1) if x == 0 else ((1,) if x > 0 else (-1,)) for x in v]
    return [Orientation(e) for e in product(*choices)]


def _as_partial(X: CellComplex, sigma) -> PartialSignMap:
    if isinstance(sigma, PartialSignMap):
        p = sigma
    else:
        items = sigma.items() if isinstance(sigma, Mapping) else sigma
        p = PartialSignMap({X.facet_index(f): s for f, s in items})
    for f in p.domain:
        X.facet_index(f)
    return p


def extends_to_acyclic(X: CellComplex, sigma) -> bool:
    """Some acyclic orientation agrees with ``sigma`` on its domain."""
    p = _as_partial(X, sigma)
    limits.check_subsets(X.m - len(p.domain), "completions")
    return any(p.agrees_with(e.signs) for e in enumerate_acyclic(X))


def extends_to_totally_cyclic(X: CellComplex, sigma) -> bool:
    p = _as_partial(X, sigma)
    limits.check_subsets(X.m - len(p.domain), "completions")
    return any(p.agrees_with(e.signs) for e in enumerate_totally_cyclic(X))


# modular pair counts


def restriction_counts(orientations: Sequence[Sequence[int]], m: int) -> np.ndarray:
    """For each facet bitmask ``Z``, the number of distinct restrictions ``eps|_Z``."""
    limits.check_subsets(m, "zero-set masks")
    out = np.zeros(1 << m, dtype=np.int64)
    for mask in range(1 << m):
        cols = [f for f in range(m) if mask >> f & 1]
        out[mask] = len({tuple(e[f] for f in cols) for e in orientations})
    return out


def _pairs(vectors: Iterable[np.ndarray], orientations, m: int) -> int:
    weight = restriction_counts(orientations, m)
    hist = np.zeros(1 << m, dtype=np.int64)
    for V in vectors:
        hist += np.bincount(zero_masks(V), minlength=1 << m)
    return int(hist @ weight)


def _boundary_array(X: CellComplex) -> np.ndarray:
    return np.array(X.boundary.tolist(), dtype=np.int64).reshape(X.n, X.m)


def zk_tension_chunks(X: CellComplex, k: int):
    G = zk_span_generators(zk_flows(X, k), k)
    for psi in box_points(X.m, 0, k - 1):
        yield psi[np.all((psi @ G.T) % k == 0, axis=1)]


def count_C(X: CellComplex, k: int) -> int:
    """Pairs ``(c, sigma)``: ``c in Z_k^n``, ``sigma`` on ``zero(c d)`` extends to an acyclic orientation."""
    if loops_and_coloops(X)[0]:
        raise HasLoop(f"{X.name} has a zero column")
    B = _boundary_array(X)
    acyc = [e.signs for e in enumerate_acyclic(X)]
    return _pairs(((c @ B) % k for c in box_points(X.n, 0, k - 1)), acyc, X.m)


def count_Psi(X: CellComplex, k: int) -> int:
    """Pairs ``(psi, sigma)`` with ``psi`` a Z_k-tension and ``sigma`` acyclically extendable."""
    if loops_and_coloops(X)[0]:
        raise HasLoop(f"{X.name} has a zero column")
    acyc = [e.signs for e in enumerate_acyclic(X)]
    return _pairs(zk_tension_chunks(X, k), acyc, X.m)


def count_Phi(X: CellComplex, k: int) -> int:
    """Pairs ``(w, sigma)`` with ``w`` a Z_k-flow and ``sigma`` extendable to a totally cyclic orientation."""
    if loops_and_coloops(X)[1]:
        raise HasColoop(f"{X.name} has a coloop")
    cyc = [e.signs for e in enumerate_totally_cyclic(X)]
    return _pairs([zk_flows(X, k)], cyc, X.m)


def contract_support(M: IntMatrix, support: Sequence[int]) -> tuple[IntMatrix, list[int]]:
    """Contract the facets in ``support`` one at a time by unit pivots.

    A facet whose column has become zero is a loop there and is deleted
    instead.  Returns the matrix and the surviving original facet indices.
    """
    alive = list(range(M.n_cols))
    for f in support:
        j = alive.index(f)
        col = M.col(j)
        r = next((i for i, a in enumerate(col) if a in (1, -1)), None)
        if r is None:
            if any(col):
                raise NotTotallyUnimodular(f"column {f} has no unit entry after contraction")
            M = M.delete_column(j)
        else:
            M = pivot(M, r, j)
        alive.pop(j)
    return M, alive


def verify_tu_support_corollaries(X: CellComplex, k: int) -> VerificationReport:
    """Pair conditions on zero sets versus orientations of the contracted / deleted complex."""
    if not is_TU(X.boundary):
        raise NotTotallyUnimodular(f"{X.name} is not totally unimodular")
    report = VerificationReport()
    m = X.m
    flows = {tuple(int(x) for x in w) for w in zk_flows(X, k)}
    bad_flow = None
    checked = 0
    for w in sorted(flows):
        supp = [f for f in range(m) if w[f]]
        zero = [f for f in range(m) if not w[f]]
        M, alive = contract_support(X.boundary, supp)
        assert alive == zero
        for signs in product((1, -1), repeat=len(zero)):
            lhs = extends_to_totally_cyclic(X, dict(zip(zero, signs)))
            rhs = is_totally_cyclic(M, signs)
            checked += 1
            if lhs != rhs and bad_flow is None:
                bad_flow = {"flow": w, "sigma": dict(zip(zero, signs)), "extends": lhs, "contracted": rhs}
    report.record(f"flow pairs via contraction (k={k})", bad_flow is None, checked, checked, bad_flow)

    tensions = set()
    for chunk in zk_tension_chunks(X, k):
        tensions.update(tuple(int(x) for x in psi) for psi in chunk)
    bad_ten = None
    checked = 0
    for psi in sorted(tensions):
        zero = [f for f in range(m) if not psi[f]]
        M = X.boundary.select_columns(zero)
        for signs in product((1, -1), repeat=len(zero)):
            lhs = extends_to_acyclic(X, dict(zip(zero, signs)))
            rhs = is_acyclic(M, signs)
            checked += 1
            if lhs != rhs and bad_ten is None:
                bad_ten = {"tension": psi, "sigma": dict(zip(zero, signs)), "extends": lhs, "deleted": rhs}
    report.record(f"tension pairs via deletion (k={k})", bad_ten is None, checked, checked, bad_ten)
    return report


__all__ = [
    "Orientation",
    "PartialSignMap",
    "compatible_orientations",
    "contract_support",
    "count_C",
    "count_Phi",
    "count_Psi",
    "enumerate_acyclic",
    "enumerate_totally_cyclic",
    "extends_to_acyclic",
    "extends_to_totally_cyclic",
    "is_acyclic",
    "is_totally_cyclic",
    "orientation_from_vector",
    "verify_tu_support_corollaries",
]
