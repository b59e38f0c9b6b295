"""Size bounds for the exhaustive algorithms.

Everything in this package is exponential somewhere; these bounds turn a
hopeless computation into a :class:`SizeLimitExceeded` instead of a hang.
"""

import os

from .errors import SizeLimitExceeded

TU_MAX_DIM = 8
SQU_MAX_COLS = 20
ISH_MAX_COLS = 12
ENUMERATION_LIMIT = 50_000_000
DEFAULT_SUBSET_BITS = 16
# residue classes times facet subsets for the per-residue sums
PERIOD_WORK_LIMIT = 10_000_000


def max_subset_bits() -> int:
    """Largest m for which 2^m facet subsets or orientations are enumerated.

    Overridable through the ``CELLCOUNT_MAX_SUBSET_BITS`` environment variable.
    """
    raw = os.environ.get("CELLCOUNT_MAX_SUBSET_BITS")
    if raw is None or raw.strip() == "":
        return DEFAULT_SUBSET_BITS
    try:
        return int(raw)
    except ValueError:
        raise SizeLimitExceeded(f"CELLCOUNT_MAX_SUBSET_BITS is not an integer: {raw!r}")


def check_subsets(m: int, what: str = "facet subsets") -> None:
    bits = max_subset_bits()
    if m > bits:
        raise SizeLimitExceeded(f"2^{m} {what} exceeds the bound 2^{bits}")


def check_enumeration(size: int, what: str = "vectors") -> None:
    if size > ENUMERATION_LIMIT:
        raise SizeLimitExceeded(f"{size} {what} exceeds the enumeration bound {ENUMERATION_LIMIT}")


def check_period(period: int, subsets: int) -> None:
    if period * subsets > PERIOD_WORK_LIMIT:
        raise SizeLimitExceeded(
            f"period {period} over {subsets} facet subsets exceeds the work bound {PERIOD_WORK_LIMIT}"
        )
