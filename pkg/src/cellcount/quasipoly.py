"""Exact quasipolynomials, stored as one polynomial constituent per residue class.

Constituent ``r`` applies to every integer ``k`` with ``k % period == r``
(Python's ``%``, so negative ``k`` use the canonical residue too).
Coefficients are ascending by power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

from .errors import InconsistentSamples, InsufficientSamples

Number = Union[int, Fraction]
Poly = tuple[Fraction, ...]


def _trim(coeffs: Iterable[Number]) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_scale(a: Poly, s: Number) -> Poly:
    return _trim(x * s for x in a)


def poly_eval(a: Poly, k: Number) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * k + c
    return acc


def poly_compose(a: Poly, b: Poly) -> Poly:
    """``a(b(k))``."""
    out: Poly = ()
    for c in reversed(a):
        out = poly_add(poly_mul(out, b), (Fraction(c),))
    return out


def _divisors(p: int) -> list[int]:
    return [d for d in range(1, p + 1) if p % d == 0]


@dataclass(frozen=True)
class Quasipolynomial:
    period: int
    constituents: tuple[Poly, ...]

    def __post_init__(self):
        if self.period < 1 or len(self.constituents) != self.period:
            raise ValueError(f"period {self.period} with {len(self.constituents)} constituents")
        object.__setattr__(self, "constituents", tuple(_trim(c) for c in self.constituents))

    # construction

    @classmethod
    def from_constituents(cls, constituents: Sequence[Iterable[Number]]) -> "Quasipolynomial":
        return cls(len(constituents), tuple(_trim(c) for c in constituents)).normalized()

    @classmethod
    def polynomial(cls, coeffs: Iterable[Number]) -> "Quasipolynomial":
        return cls(1, (_trim(coeffs),))

    @classmethod
    def constant(cls, c: Number) -> "Quasipolynomial":
        return cls.polynomial([c])

    @classmethod
    def zero(cls) -> "Quasipolynomial":
        return cls(1, ((),))

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "Quasipolynomial":
        return cls.polynomial([0] * degree + [coeff])

    @classmethod
    def periodic(cls, values: Sequence[Number]) -> "Quasipolynomial":
        """Constant on each residue class: ``values[k % len(values)]``."""
        return cls.from_constituents([[v] for v in values])

    # structure

    @property
    def degree(self) -> int:
        """Largest constituent degree; -1 for the zero quasipolynomial."""
        return max(len(c) for c in self.constituents) - 1

    def constituent(self, r: int) -> Poly:
        return self.constituents[r % self.period]

    def normalized(self) -> "Quasipolynomial":
        for d in _divisors(self.period):
            if all(self.constituents[r] == self.constituents[r % d] for r in range(self.period)):
                return Quasipolynomial(d, self.constituents[:d])
        raise AssertionError("unreachable: the period divides itself")

    def with_period(self, p: int) -> "Quasipolynomial":
        if p % self.period:
            raise ValueError(f"{p} is not a multiple of the period {self.period}")
        return Quasipolynomial(p, tuple(self.constituents[r % self.period] for r in range(p)))

    def is_polynomial(self) -> bool:
        return self.normalized().period == 1

    def __call__(self, k: int) -> Fraction:
        return self.evaluate(k)

    def evaluate(self, k: int) -> Fraction:
        return poly_eval(self.constituents[k % self.period], k)

    def coefficients(self) -> Poly:
        """Coefficients of a period-1 quasipolynomial."""
        q = self.normalized()
        if q.period != 1:
            raise ValueError(f"quasipolynomial of period {q.period} is not a polynomial")
        return q.constituents[0]

    # arithmetic

    def _combine(self, other: "Quasipolynomial", op) -> "Quasipolynomial":
        other = as_quasipolynomial(other)
        p = lcm(self.period, other.period)
        return Quasipolynomial(
            p, tuple(op(self.constituent(r), other.constituent(r)) for r in range(p))
        ).normalized()

    def __add__(self, other):
        return self._combine(other, poly_add)

    __radd__ = __add__

    def __neg__(self):
        return Quasipolynomial(self.period, tuple(poly_scale(c, -1) for c in self.constituents))

    def __sub__(self, other):
        return self + (-as_quasipolynomial(other))

    def __rsub__(self, other):
        return as_quasipolynomial(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self._combine(other, poly_mul)

    __rmul__ = __mul__

    def scale(self, s: Number) -> "Quasipolynomial":
        return Quasipolynomial(self.period, tuple(poly_scale(c, s) for c in self.constituents)).normalized()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Quasipolynomial.constant(other)
        if not isinstance(other, Quasipolynomial):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.period == b.period and a.constituents == b.constituents

    def __hash__(self) -> int:
        q = self.normalized()
        return hash((q.period, q.constituents))

    def agrees_on_window(self, other: "Quasipolynomial", start: int = 0) -> bool:
        """Pointwise comparison on ``lcm(periods) * (max degree + 1)`` consecutive integers.

        For normalized inputs this is equivalent to ``==``.
        """
        p = lcm(self.period, other.period)
        width = p * (max(self.degree, other.degree, 0) + 1)
        return all(self.evaluate(k) == other.evaluate(k) for k in range(start, start + width))

    # serialization

    def to_json(self) -> dict:
        q = self.normalized()
        return {"period": q.period, "constituents": [[_frac_str(c) for c in poly] for poly in q.constituents]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Quasipolynomial":
        consts = [[Fraction(s) for s in poly] for poly in data["constituents"]]
        return cls(int(data["period"]), tuple(_trim(c) for c in consts))

    def __repr__(self) -> str:
        if self.period == 1:
            return f"Quasipolynomial({format_poly(self.constituents[0])})"
        parts = ", ".join(f"{r}: {format_poly(c)}" for r, c in enumerate(self.constituents))
        return f"Quasipolynomial(period={self.period}; {parts})"


def as_quasipolynomial(x) -> Quasipolynomial:
    if isinstance(x, Quasipolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Quasipolynomial.constant(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a quasipolynomial")


K = Quasipolynomial.monomial(1)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_poly(coeffs: Poly, var: str = "k") -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        body = _frac_str(mag)
        if i > 0:
            power = var if i == 1 else f"{var}^{i}"
            body = power if mag == 1 else f"{body}*{power}"
        terms.append(("-" if c < 0 else "+", body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _interpolate(points: Sequence[tuple[int, Fraction]]) -> Poly:
    """Exact Lagrange interpolation through ``len(points)`` points."""
    out: Poly = ()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis: Poly = (Fraction(1),)
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = poly_mul(basis, (Fraction(-xj), Fraction(1)))
                denom *= xi - xj
        out = poly_add(out, poly_scale(basis, Fraction(yi) / denom))
    return out


def fit(samples: Mapping[int, Number] | Iterable[tuple[int, Number]], period: int, degree: int) -> Quasipolynomial:
    """Interpolate each residue class with a polynomial of degree <= ``degree``.

    Samples beyond the first ``degree + 1`` of a class must agree with the
    fit, otherwise :class:`InconsistentSamples` is raised.
    """
    pairs = list(samples.items()) if isinstance(samples, Mapping) else list(samples)
    ks = [k for k, _ in pairs]
    if len(set(ks)) != len(ks):
        raise ValueError("sample table has repeated k values")
    classes: dict[int, list[tuple[int, Fraction]]] = {r: [] for r in range(period)}
    for k, v in sorted(pairs):
        classes[k % period].append((k, Fraction(v)))
    constituents = []
    for r in range(period):
        pts = classes[r]
        if len(pts) < degree + 1:
            raise InsufficientSamples(f"residue {r} mod {period} has {len(pts)} samples, need {degree + 1}")
        poly = _interpolate(pts[: degree + 1])
        for k, v in pts[degree + 1:]:
            if poly_eval(poly, k) != v:
                raise InconsistentSamples(
                    f"sample at k={k} disagrees with the degree-{degree} fit of residue {r} mod {period}"
                )
        constituents.append(poly)
    return Quasipolynomial(period, tuple(constituents)).normalized()
