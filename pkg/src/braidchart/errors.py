"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ChartError(Exception):
    """Base class. ``ident`` names the offending object, ``line`` the source line."""

    def __init__(self, message: str, *, ident: str | None = None, line: int | None = None):
        self.ident = ident
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ChartSyntaxError(ChartError):
    """Malformed line in a chart, targets or PD document."""


class UnknownKindError(ChartSyntaxError):
    pass


class DuplicateIdError(ChartError):
    pass


class DanglingReferenceError(ChartError):
    pass


class ArityError(ChartError):
    """A rotation does not have the number of ends its vertex kind requires."""


class EndMismatchError(ChartError):
    """An edge end is missing, repeated, or listed at the wrong vertex."""


class LabelRangeError(ChartError):
    pass


class NoIndexError(ChartError):
    """Crossing vertices carry neither an index nor a sign."""


class WindowError(ChartError):
    """A weight sequence does not cover the indices a census needs."""


class StarViolationError(ChartError):
    pass


class BudgetExhaustedError(ChartError):
    def __init__(self, message: str, *, nodes: int, partial: dict | None = None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = partial or {}


class InfeasibleConfigError(ChartError):
    pass


class NoLayoutError(ChartError):
    pass


class PDError(ChartError):
    """Malformed or inconsistent planar-diagram input."""
