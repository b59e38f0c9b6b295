"""Modular chromatic, tension and flow counts over Z_k.

Each count is available as an exact quasipolynomial (inclusion-exclusion
over facet subsets, deletion-contraction, or Tutte specialization, the
last in :mod:`cellcount.tutte`) and as a brute-force count at a single k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Optional, Union

import numpy as np

from . import limits
from ._lattice import box_points, encode_rows
from .complex import CellComplex
from .errors import NotShrinkable
from .exact_linalg import IntMatrix, integer_solve, pivot, rank
from .quasipoly import K, Quasipolynomial
from .unimodularity import SubsetData, subset_table

KINDS = ("chromatic", "tension", "flow")
METHODS = ("inclusion_exclusion", "deletion_contraction", "tutte", "brute")


def _gamma_at(factors: tuple[int, ...], r: int) -> int:
    # gcd(0, a) == a, which is gcd(k, a) for every k divisible by the period
    out = 1
    for a in factors:
        out *= gcd(r, a)
    return out


def _period(table: tuple[SubsetData, ...]) -> int:
    p = 1
    for data in table:
        for a in data.factors:
            p = lcm(p, a)
    limits.check_period(p, len(table))
    return p


def _ie_constituents(table, exponent, sign, period: int) -> list[tuple]:
    """Per-residue sum of ``sign(J) * gamma_J(r) * k^exponent(J)``."""
    constituents = []
    for r in range(period):
        coeffs: dict[int, int] = {}
        for data in table:
            e = exponent(data)
            coeffs[e] = coeffs.get(e, 0) + sign(data) * _gamma_at(data.factors, r)
        top = max(coeffs) if coeffs else 0
        constituents.append(tuple(coeffs.get(i, 0) for i in range(top + 1)))
    return constituents


def chromatic_ie(X: CellComplex) -> Quasipolynomial:
    """``sum_J (-1)^|J| k^(n - rho(J)) gamma(X_J, k)``."""
    table = subset_table(X.boundary)
    n = X.n
    consts = _ie_constituents(table, lambda d: n - d.rank, lambda d: (-1) ** len(d.columns), _period(table))
    return Quasipolynomial.from_constituents(consts)


def flow_ie(X: CellComplex) -> Quasipolynomial:
    """``sum_J (-1)^(m - |J|) k^(|J| - rho(J)) gamma(X_J, k)``."""
    table = subset_table(X.boundary)
    m = X.m
    consts = _ie_constituents(
        table, lambda d: len(d.columns) - d.rank, lambda d: (-1) ** (m - len(d.columns)), _period(table)
    )
    return Quasipolynomial.from_constituents(consts)


def tension_qp(X: CellComplex) -> Quasipolynomial:
    """``sum_J (-1)^|J| k^(rho - rho(J)) gamma(X_J, k) / gamma(X, k)``, per residue class.

    Each constituent is checked against the chromatic one:
    ``chi_r = k^(n - rho) gamma_X(r) tau_r``.
    """
    table = subset_table(X.boundary)
    rho = table[-1].rank
    full = table[-1].factors
    p = _period(table)
    sign = lambda d: (-1) ** len(d.columns)
    chi = _ie_constituents(table, lambda d: X.n - d.rank, sign, p)
    raw = _ie_constituents(table, lambda d: rho - d.rank, sign, p)
    consts = []
    for r in range(p):
        g = _gamma_at(full, r)
        tau_r = tuple(Fraction(c, g) for c in raw[r])
        check = Quasipolynomial.polynomial(tau_r) * Quasipolynomial.monomial(X.n - rho, g)
        assert check == Quasipolynomial.polynomial(chi[r]), f"tension/chromatic mismatch at residue {r}"
        consts.append(tau_r)
    return Quasipolynomial.from_constituents(consts)


# deletion-contraction


def _unit_positions(M: IntMatrix) -> list[tuple[int, int]]:
    return [(r, f) for r in range(M.n_rows) for f in range(M.n_cols) if M[r, f] in (1, -1)]


def _coloop_shortcut_applies(M: IntMatrix, r: int, f: int, contracted: IntMatrix) -> bool:
    """``f`` is a coloop and row ``r`` (without ``f``) is a Z-combination of the pivoted rows."""
    if rank(M.delete_column(f)) != rank(M) - 1:
        return False
    v = [M[r, j] for j in range(M.n_cols) if j != f]
    return integer_solve(contracted.transpose(), v) is not None


@lru_cache(maxsize=100_000)
def _chromatic_dc(M: IntMatrix, coloop_shortcut: bool) -> Quasipolynomial:
    if M.n_cols == 0:
        return Quasipolynomial.monomial(M.n_rows)
    if M.zero_columns():
        return Quasipolynomial.zero()
    for r, f in _unit_positions(M):
        contracted = pivot(M, r, f)
        try:
            if coloop_shortcut and _coloop_shortcut_applies(M, r, f, contracted):
                return (K - 1) * _chromatic_dc(contracted, coloop_shortcut)
            return _chromatic_dc(M.delete_column(f), coloop_shortcut) - _chromatic_dc(contracted, coloop_shortcut)
        except NotShrinkable:
            continue
    raise NotShrinkable(f"no unit pivot leads to a base case from {M!r}")


def chromatic_delcon(X: CellComplex, coloop_shortcut: bool = True) -> Quasipolynomial:
    """Deletion-contraction over unit pivots, backtracking over pivot choices."""
    return _chromatic_dc(X.boundary, coloop_shortcut)


@lru_cache(maxsize=100_000)
def _flow_dc(M: IntMatrix) -> Quasipolynomial:
    if M.n_cols == 0:
        return Quasipolynomial.constant(1)
    zeros = M.zero_columns()
    if zeros:
        # a loop carries any nonzero value independently of the rest
        return (K - 1) * _flow_dc(M.delete_column(zeros[0]))
    for r, f in _unit_positions(M):
        try:
            return _flow_dc(pivot(M, r, f)) - _flow_dc(M.delete_column(f))
        except NotShrinkable:
            continue
    raise NotShrinkable(f"no unit pivot leads to a base case from {M!r}")


def flow_delcon(X: CellComplex) -> Quasipolynomial:
    return _flow_dc(X.boundary)


# brute-force oracles


def _boundary_array(X: CellComplex) -> np.ndarray:
    return np.array(X.boundary.tolist(), dtype=np.int64).reshape(X.n, X.m)


def zk_flows(X: CellComplex, k: int) -> np.ndarray:
    """Every ``w in Z_k^m`` with ``dw = 0 mod k``, as rows with entries in ``[0, k-1]``."""
    B = _boundary_array(X)
    found = [w[np.all((w @ B.T) % k == 0, axis=1)] for w in box_points(X.m, 0, k - 1)]
    return np.concatenate(found) if found else np.zeros((0, X.m), dtype=np.int64)


def zk_span_generators(vectors: np.ndarray, k: int) -> np.ndarray:
    """A subset of ``vectors`` generating the same Z_k-submodule, chosen greedily."""
    m = vectors.shape[1]
    gens: list[np.ndarray] = []
    span = np.zeros((1, m), dtype=np.int64)
    seen = {0}
    for v in vectors:
        code = int(encode_rows(v[None, :], k)[0])
        if code in seen:
            continue
        gens.append(v)
        shifted = [(span + t * v) % k for t in range(k)]
        span = np.unique(np.concatenate(shifted), axis=0)
        seen = set(encode_rows(span, k).tolist())
    return np.array(gens, dtype=np.int64).reshape(len(gens), m)


def brute_chromatic(X: CellComplex, k: int) -> int:
    """``#{c in Z_k^n : c d nowhere zero mod k}``."""
    B = _boundary_array(X)
    return sum(int(np.all((c @ B) % k != 0, axis=1).sum()) for c in box_points(X.n, 0, k - 1))


def brute_flow(X: CellComplex, k: int) -> int:
    """``#{w in (Z_k \\ 0)^m : dw = 0 mod k}``."""
    B = _boundary_array(X)
    return sum(int(np.all((w @ B.T) % k == 0, axis=1).sum()) for w in box_points(X.m, 1, k - 1))


def brute_tension(X: CellComplex, k: int) -> int:
    """Nowhere-zero ``psi in Z_k^m`` orthogonal mod k to every Z_k-flow."""
    G = zk_span_generators(zk_flows(X, k), k)
    return sum(int(np.all((psi @ G.T) % k == 0, axis=1).sum()) for psi in box_points(X.m, 1, k - 1))


def _codes(chunks, k: int) -> set[int]:
    out: set[int] = set()
    for chunk in chunks:
        out.update(np.unique(encode_rows(chunk, k)).tolist())
    return out


def zk_cuts(X: CellComplex, k: int) -> set[int]:
    B = _boundary_array(X)
    return _codes(((c @ B) % k for c in box_points(X.n, 0, k - 1)), k)


def zk_tensions(X: CellComplex, k: int) -> set[int]:
    G = zk_span_generators(zk_flows(X, k), k)
    return _codes((psi[np.all((psi @ G.T) % k == 0, axis=1)] for psi in box_points(X.m, 0, k - 1)), k)


def verify_cut_equals_tension_mod(X: CellComplex, k: int) -> bool:
    """Cuts ``{c d mod k}`` and tensions ``Flow_{Z_k}^perp`` coincide as sets."""
    return zk_cuts(X, k) == zk_tensions(X, k)


def decode(code: int, k: int, m: int) -> tuple[int, ...]:
    digits = []
    for _ in range(m):
        code, d = divmod(code, k)
        digits.append(d)
    return tuple(reversed(digits))


@dataclass(frozen=True)
class ModularCountRequest:
    complex: CellComplex
    kind: str
    method: str = "inclusion_exclusion"
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.method == "brute" and (self.k is None or self.k < 1):
            raise ValueError("brute method needs a positive k")
        if self.method == "deletion_contraction" and self.kind == "tension":
            raise ValueError("deletion-contraction is implemented for chromatic and flow counts")


def compute(req: ModularCountRequest) -> Union[Quasipolynomial, int]:
    X = req.complex
    if req.method == "brute":
        return {"chromatic": brute_chromatic, "tension": brute_tension, "flow": brute_flow}[req.kind](X, req.k)
    if req.method == "tutte":
        from .tutte import tutte_specialization

        return tutte_specialization(X, req.kind)
    if req.method == "deletion_contraction":
        return chromatic_delcon(X) if req.kind == "chromatic" else flow_delcon(X)
    return {"chromatic": chromatic_ie, "tension": tension_qp, "flow": flow_ie}[req.kind](X)


__all__ = [
    "KINDS",
    "METHODS",
    "ModularCountRequest",
    "brute_chromatic",
    "brute_flow",
    "brute_tension",
    "chromatic_delcon",
    "chromatic_ie",
    "compute",
    "flow_delcon",
    "flow_ie",
    "tension_qp",
    "verify_cut_equals_tension_mod",
    "zk_flows",
]
