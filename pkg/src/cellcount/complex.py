"""Cell complexes, identified with their labeled top boundary matrix."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb, prod
from typing import Iterable, Sequence

from . import limits
from .errors import DimensionMismatch, IndexOutOfRange, InvalidEdge, NonUnitPivot, UnknownBuiltin
from .exact_linalg import IntMatrix, as_matrix, invariant_factors, kernel_basis, pivot, rank
from .exact_linalg import gamma as _gamma


@dataclass(frozen=True)
class CellComplex:
    """Facets index the columns of ``boundary``, ridges its rows."""

    name: str
    ridge_labels: tuple[str, ...]
    facet_labels: tuple[str, ...]
    boundary: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "ridge_labels", tuple(self.ridge_labels))
        object.__setattr__(self, "facet_labels", tuple(self.facet_labels))
        n, m = self.boundary.shape
        if len(self.ridge_labels) != n or len(self.facet_labels) != m:
            raise DimensionMismatch(
                f"{len(self.ridge_labels)} ridge and {len(self.facet_labels)} facet labels "
                f"for a {n}x{m} boundary matrix"
            )
        for kind, labels in (("ridge", self.ridge_labels), ("facet", self.facet_labels)):
            if len(set(labels)) != len(labels):
                raise DimensionMismatch(f"duplicate {kind} labels in {labels}")

    @property
    def n(self) -> int:
        return self.boundary.n_rows

    @property
    def m(self) -> int:
        return self.boundary.n_cols

    @property
    def rank(self) -> int:
        return rank(self.boundary)

    def facet_index(self, label_or_index) -> int:
        if isinstance(label_or_index, str):
            try:
                return self.facet_labels.index(label_or_index)
            except ValueError:
                raise IndexOutOfRange(f"no facet labeled {label_or_index!r}")
        if not 0 <= label_or_index < self.m:
            raise IndexOutOfRange(f"facet index {label_or_index} out of range")
        return label_or_index

    def ridge_index(self, label_or_index) -> int:
        if isinstance(label_or_index, str):
            try:
                return self.ridge_labels.index(label_or_index)
            except ValueError:
                raise IndexOutOfRange(f"no ridge labeled {label_or_index!r}")
        if not 0 <= label_or_index < self.n:
            raise IndexOutOfRange(f"ridge index {label_or_index} out of range")
        return label_or_index

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ridges": list(self.ridge_labels),
            "facets": list(self.facet_labels),
            "boundary": self.boundary.tolist(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "CellComplex":
        ridges = list(data["ridges"])
        facets = list(data["facets"])
        return from_boundary(data["name"], ridges, facets, data["boundary"])

    @classmethod
    def loads(cls, text: str) -> "CellComplex":
        return cls.from_json(json.loads(text))


def from_boundary(name: str, ridge_labels: Sequence[str], facet_labels: Sequence[str], matrix) -> CellComplex:
    if isinstance(matrix, IntMatrix):
        M = matrix
    else:
        rows = [list(r) for r in matrix]
        M = IntMatrix(rows, len(facet_labels) if not rows or rows[0] == [] else None)
    if M.n_rows != len(ridge_labels):
        raise DimensionMismatch(f"{len(ridge_labels)} ridge labels for {M.n_rows} rows")
    return CellComplex(name, tuple(ridge_labels), tuple(facet_labels), M)


def matrix_complex(matrix, name: str = "matrix") -> CellComplex:
    """Complex with generated labels ``r0, r1, ...`` and ``f0, f1, ...``."""
    M = as_matrix(matrix)
    return CellComplex(name, tuple(f"r{i}" for i in range(M.n_rows)), tuple(f"f{j}" for j in range(M.n_cols)), M)


def graph_complex(vertices: Sequence, edges: Iterable[tuple], name: str = "graph") -> CellComplex:
    """Signed incidence matrix: edge ``(u, v)`` has -1 at ``u`` and +1 at ``v``."""
    vertices = list(vertices)
    where = {v: i for i, v in enumerate(vertices)}
    if len(where) != len(vertices):
        raise InvalidEdge("duplicate vertices")
    cols = []
    labels = []
    for edge in edges:
        if len(edge) != 2:
            raise InvalidEdge(f"edge {edge!r} does not have two endpoints")
        u, v = edge
        if u not in where or v not in where:
            raise InvalidEdge(f"edge {edge!r} has an endpoint outside the vertex set")
        col = [0] * len(vertices)
        col[where[u]] -= 1
        col[where[v]] += 1
        cols.append(col)
        label = f"{u}{v}"
        while label in labels:
            label += "'"
        labels.append(label)
    M = IntMatrix((list(r) for r in zip(*cols)), len(cols)) if cols else IntMatrix.zeros(len(vertices), 0)
    return CellComplex(name, tuple(str(v) for v in vertices), tuple(labels), M)


def _face_label(face: Sequence[int], wide: bool) -> str:
    return ",".join(map(str, face)) if wide else "".join(map(str, face))


def simplex_skeleton(N: int, d: int) -> CellComplex:
    """d-skeleton of the simplex on vertices 1..N with the simplicial boundary."""
    if not 1 <= d < N:
        raise DimensionMismatch(f"need 1 <= d < N, got N={N}, d={d}")
    m, n = comb(N, d + 1), comb(N, d)
    limits.check_enumeration(m * n, "boundary matrix entries")
    facets = list(combinations(range(1, N + 1), d + 1))
    ridges = list(combinations(range(1, N + 1), d))
    where = {r: i for i, r in enumerate(ridges)}
    A = [[0] * m for _ in range(n)]
    for j, face in enumerate(facets):
        for i in range(d + 1):
            A[where[face[:i] + face[i + 1:]]][j] = (-1) ** i
    wide = N > 9
    return CellComplex(
        f"simplex_skeleton({N},{d})",
        tuple(_face_label(r, wide) for r in ridges),
        tuple(_face_label(f, wide) for f in facets),
        IntMatrix(A, m),
    )


PYRAMID_RIDGES = ("12", "13", "14", "15", "23", "25", "34", "45")
PYRAMID_FACETS = ("123", "134", "145", "125", "2345")
PYRAMID_BOUNDARY = (
    (1, 0, 0, 1, 0),
    (-1, 1, 0, 0, 0),
    (0, -1, 1, 0, 0),
    (0, 0, -1, -1, 0),
    (1, 0, 0, 0, 1),
    (0, 0, 0, 1, -1),
    (0, 1, 0, 0, 1),
    (0, 0, 1, 0, 1),
)

BUILTINS = ("pyramid", "rp2")


def builtin(name: str) -> CellComplex:
    if name == "pyramid":
        return CellComplex("pyramid", PYRAMID_RIDGES, PYRAMID_FACETS, IntMatrix(PYRAMID_BOUNDARY))
    if name == "rp2":
        return CellComplex("rp2", ("e",), ("f",), IntMatrix([[2]]))
    raise UnknownBuiltin(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


def delete_facet(X: CellComplex, f) -> CellComplex:
    j = X.facet_index(f)
    labels = X.facet_labels[:j] + X.facet_labels[j + 1:]
    return CellComplex(X.name, X.ridge_labels, labels, X.boundary.delete_column(j))


def contract(X: CellComplex, r, f) -> CellComplex:
    i, j = X.ridge_index(r), X.facet_index(f)
    if X.boundary[i, j] not in (1, -1):
        raise NonUnitPivot(f"boundary entry at ({X.ridge_labels[i]}, {X.facet_labels[j]}) is not a unit")
    return CellComplex(
        f"{X.name}/{X.ridge_labels[i]}·{X.facet_labels[j]}",
        X.ridge_labels[:i] + X.ridge_labels[i + 1:],
        X.facet_labels[:j] + X.facet_labels[j + 1:],
        pivot(X.boundary, i, j),
    )


def _facet_indices(X: CellComplex, J: Iterable) -> list[int]:
    return sorted({X.facet_index(f) for f in J})


def subcomplex(X: CellComplex, J: Iterable) -> CellComplex:
    """Keep the facets in ``J`` and all ridges."""
    cols = _facet_indices(X, J)
    return CellComplex(
        X.name, X.ridge_labels, tuple(X.facet_labels[j] for j in cols), X.boundary.select_columns(cols)
    )


def matroid_rank(X: CellComplex, J: Iterable) -> int:
    return rank(X.boundary.select_columns(_facet_indices(X, J)))


def loops_and_coloops(X: CellComplex) -> tuple[frozenset[int], frozenset[int]]:
    loops = frozenset(X.boundary.zero_columns())
    rho = X.rank
    coloops = frozenset(j for j in range(X.m) if rank(X.boundary.delete_column(j)) == rho - 1)
    return loops, coloops


def flow_basis(X: CellComplex) -> IntMatrix:
    return kernel_basis(X.boundary)


def tension_basis(X: CellComplex) -> IntMatrix:
    """Z-basis of the tension lattice (the saturation of the cut lattice)."""
    return kernel_basis(flow_basis(X))


def cut_generators(X: CellComplex) -> IntMatrix:
    return X.boundary


def tension_cut_index(X: CellComplex) -> int:
    """``[Ten_Z : Cut_Z]``, the torsion order of the top cohomology."""
    return prod(invariant_factors(X.boundary))


def cohomology_order(X: CellComplex, k: int) -> int:
    """``|H^d(X; Z_k)| = k^(m - rho) * gamma(X, k)``."""
    rho = X.rank
    return k ** (X.m - rho) * _gamma(X.boundary.transpose(), k)


def gamma(X: CellComplex, k: int) -> int:
    return _gamma(X.boundary.transpose(), k)
