"""Integral colorings, tensions and flows with palette ``[-k+1, k-1]``.

Counts are exact lattice-point enumerations.  Their Ehrhart quasipolynomials
are recovered by interpolation with a held-out consistency check, and the
closed-dilate pair counts (range ``[-k, k]``) feed the reciprocity checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import limits
from ._lattice import KernelParametrization, box_points, count_box_kernel
from .complex import CellComplex, flow_basis, loops_and_coloops
from .errors import InconsistentSamples, PeriodSearchExhausted
from .exact_linalg import IntMatrix
from .quasipoly import Quasipolynomial, fit
from .unimodularity import subset_table

DEFAULT_MAX_PERIOD = 4


def _check_box(width: int, dim: int, what: str) -> None:
    limits.check_enumeration(width ** dim, what)


def _nonzero_count(chunks) -> int:
    return sum(int(np.all(x != 0, axis=1).sum()) for x in chunks)


@lru_cache(maxsize=4096)
def _chromatic_count(M: IntMatrix, k: int) -> int:
    # inclusion-exclusion over the facets forced to vanish
    lo, hi = -k + 1, k - 1
    total = 0
    for data in subset_table(M):
        sub = M.select_columns(data.columns).transpose()
        total += (-1) ** len(data.columns) * count_box_kernel(sub, lo, hi)
    return total


def integral_chromatic(X: CellComplex, k: int) -> int:
    """``#{c in [-k+1, k-1]^n : c d nowhere zero over Z}``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return _chromatic_count(X.boundary, k)


def integral_tension(X: CellComplex, k: int) -> int:
    """Nowhere-zero integer tensions with entries in ``[-k+1, k-1]``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return _nonzero_count(KernelParametrization(flow_basis(X)).points(-k + 1, k - 1))


def integral_flow(X: CellComplex, k: int) -> int:
    """``#{w in [-k+1, k-1]^m : dw = 0, w nowhere zero}``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return _nonzero_count(KernelParametrization(X.boundary).points(-k + 1, k - 1))


COUNTERS: dict[str, Callable[[CellComplex, int], int]] = {
    "chromatic": integral_chromatic,
    "tension": integral_tension,
    "flow": integral_flow,
}


def degree_bound(X: CellComplex, kind: str) -> int:
    rho = X.rank
    return {"chromatic": X.n, "tension": rho, "flow": X.m - rho}[kind]


@dataclass(frozen=True)
class IntegralFit:
    """A fitted Ehrhart quasipolynomial together with how it was found.

    The period is the smallest one consistent with held-out samples; it
    is not certified by any vertex-denominator computation.
    """

    kind: str
    quasipolynomial: Quasipolynomial
    degree_bound: int
    accepted_period: int
    samples: tuple[tuple[int, int], ...]
    period_is_heuristic: bool = True

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "quasipolynomial": self.quasipolynomial.to_json(),
            "degree_bound": self.degree_bound,
            "accepted_period": self.accepted_period,
            "period_is_heuristic": self.period_is_heuristic,
            "samples": [[k, v] for k, v in self.samples],
        }


def fit_integral_qp(
    X: CellComplex, kind: str, max_period: int = DEFAULT_MAX_PERIOD, extra: int = 2
) -> IntegralFit:
    """Fit the integral count by trial periods ``1, 2, ...``.

    For period ``p`` and degree bound ``d`` the samples ``k = 1 .. p(d + 1 + extra)``
    give every residue class ``extra`` held-out points beyond the interpolation set.
    """
    counter = COUNTERS[kind]
    d = degree_bound(X, kind)
    cache: dict[int, int] = {}
    for p in range(1, max_period + 1):
        ks = range(1, p * (d + 1 + extra) + 1)
        for k in ks:
            if k not in cache:
                cache[k] = counter(X, k)
        samples = [(k, cache[k]) for k in ks]
        try:
            q = fit(samples, p, d)
        except InconsistentSamples:
            continue
        return IntegralFit(kind, q, d, p, tuple(samples))
    raise PeriodSearchExhausted(f"no period up to {max_period} fits the integral {kind} counts of {X.name}")


# closed-dilate pair counts


def _sign_codes(V: np.ndarray) -> np.ndarray:
    """Base-3 code of the sign pattern of each row (digit 0 for zero, 1 for +, 2 for -)."""
    digits = np.where(V > 0, 1, np.where(V < 0, 2, 0))
    weights = 3 ** np.arange(V.shape[1], dtype=np.int64)
    return digits @ weights if V.shape[1] else np.zeros(V.shape[0], dtype=np.int64)


def _compatible_count_by_code(orientations: list[tuple[int, ...]], m: int) -> np.ndarray:
    """For each sign-pattern code, the number of orientations agreeing on its nonzero entries."""
    table = np.zeros(3 ** m, dtype=np.int64)
    if not orientations:
        return table
    E = np.array(orientations, dtype=np.int64).reshape(len(orientations), m)
    for code in range(3 ** m):
        ok = np.ones(len(orientations), dtype=bool)
        c = code
        for f in range(m):
            c, digit = divmod(c, 3)
            if digit == 1:
                ok &= E[:, f] == 1
            elif digit == 2:
                ok &= E[:, f] == -1
        table[code] = int(ok.sum())
    return table


def _pair_count(values, orientations, m: int) -> int:
    limits.check_enumeration(3 ** m, "sign patterns")
    weight = _compatible_count_by_code(orientations, m)
    hist = np.zeros(3 ** m, dtype=np.int64)
    for V in values:
        hist += np.bincount(_sign_codes(V), minlength=3 ** m)
    return int(sum(int(h) * int(w) for h, w in zip(hist, weight)))


def closed_pairs_chromatic(X: CellComplex, k: int, acyclic: Optional[list] = None) -> int:
    """Pairs ``(c, eps)``: ``c in [-k, k]^n``, ``eps`` acyclic, ``eps_f (c d)_f >= 0`` for all ``f``."""
    from .orientations import enumerate_acyclic

    acyclic = [e.signs for e in enumerate_acyclic(X)] if acyclic is None else acyclic
    B = np.array(X.boundary.tolist(), dtype=np.int64).reshape(X.n, X.m)
    _check_box(2 * k + 1, X.n, "closed-box colorings")
    return _pair_count((c @ B for c in box_points(X.n, -k, k)), acyclic, X.m)


def closed_pairs_tension(X: CellComplex, k: int, acyclic: Optional[list] = None) -> int:
    """Pairs ``(psi, eps)``: ``psi`` an integer tension in ``[-k, k]^m``, ``eps`` acyclic and compatible."""
    from .orientations import enumerate_acyclic

    acyclic = [e.signs for e in enumerate_acyclic(X)] if acyclic is None else acyclic
    return _pair_count(KernelParametrization(flow_basis(X)).points(-k, k), acyclic, X.m)


def closed_pairs_flow(X: CellComplex, k: int, cyclic: Optional[list] = None) -> int:
    """Pairs ``(w, eps)``: ``w`` an integer flow in ``[-k, k]^m``, ``eps`` totally cyclic and compatible."""
    from .orientations import enumerate_totally_cyclic

    cyclic = [e.signs for e in enumerate_totally_cyclic(X)] if cyclic is None else cyclic
    return _pair_count(KernelParametrization(X.boundary).points(-k, k), cyclic, X.m)


def has_loop(X: CellComplex) -> bool:
    return bool(loops_and_coloops(X)[0])


def has_coloop(X: CellComplex) -> bool:
    return bool(loops_and_coloops(X)[1])
