"""Exception classes shared across the package."""
from __future__ import annotations


class OperadError(Exception):
    """Base class for all package errors."""


class DegreeMismatchError(OperadError):
    """Permutation degrees (or a degree and an arity) do not agree."""


class ArityMismatchError(OperadError):
    """Operadic arities do not line up (composition, actions, hom queries)."""


class LinearityError(OperadError):
    """A term's leaf labels are not a bijection onto {1..n}."""

    def __init__(self, message: str, labels: tuple[int, ...] = ()):
        super().__init__(message)
        self.labels = labels


class TermSyntaxError(OperadError):
    """Unparseable term text; ``position`` is a 0-based offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnassignedSymbolError(OperadError):
    """A term mentions a symbol the signature does not assign."""


class CoverageError(OperadError):
    """An operad element is not reachable within the stated search budget."""


class ForkConditionError(OperadError):
    """Two object maps disagree after evaluation; carries the witness object."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class OracleMismatchError(OperadError):
    """Two categorified operads target observably different operads."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
