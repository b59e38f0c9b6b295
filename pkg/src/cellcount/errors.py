"""Exception hierarchy for cellcount."""


class CellCountError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatch(CellCountError):
    pass


class IndexOutOfRange(CellCountError, IndexError):
    pass


class NonUnitPivot(CellCountError):
    pass


class NotTotallyUnimodular(CellCountError):
    pass


class NotSQU(CellCountError):
    pass


class NotShrinkable(CellCountError):
    pass


class SizeLimitExceeded(CellCountError):
    pass


class InvalidEdge(CellCountError):
    pass


class UnknownBuiltin(CellCountError):
    pass


class InsufficientSamples(CellCountError):
    pass


class InconsistentSamples(CellCountError):
    pass


class PeriodSearchExhausted(CellCountError):
    pass


class HasLoop(CellCountError):
    pass


class HasColoop(CellCountError):
    pass


class ZeroEntry(CellCountError):
    pass
