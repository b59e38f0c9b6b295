"""Structured pass/fail/skip reports for verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def jsonable(x: Any) -> Any:
    """Convert exact values to JSON-friendly ones (rationals become strings)."""
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return repr(x)


@dataclass
class Check:
    name: str
    status: str
    lhs: Any = None
    rhs: Any = None
    witness: Any = None
    reason: Optional[str] = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            self.witness = {"lhs": jsonable(self.lhs), "rhs": jsonable(self.rhs)}

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "lhs": jsonable(self.lhs), "rhs": jsonable(self.rhs)}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def record(self, name: str, ok: bool, lhs: Any = None, rhs: Any = None, witness: Any = None) -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, lhs, rhs, None if ok else witness))
        return ok

    def compare(self, name: str, lhs: Any, rhs: Any, witness: Any = None) -> bool:
        return self.record(name, lhs == rhs, lhs, rhs, witness)

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, SKIPPED, reason=reason))

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.lhs, c.rhs, c.witness, c.reason))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self) -> dict:
        return {"passed": self.passed, "summary": self.summary(), "checks": [c.to_json() for c in self.checks]}
