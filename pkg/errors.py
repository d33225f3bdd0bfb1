"""
Exception hierarchy for medialdd
Every library error is a ValueError so callers that only guard against bad input keep working
"""

from typing import Any, Optional


class MedialddError(ValueError):
    """Root of all medialdd errors"""


class CarrierError(MedialddError):
    """A value or element index lies outside the carrier set"""


class VariableIndexError(MedialddError, IndexError):
    """A variable index lies outside 1..n"""


class ArityError(MedialddError):
    """A function has the wrong number of variables for the operation"""


class TransportError(MedialddError):
    """Structure transport preconditions do not hold"""


class CatalogError(MedialddError):
    """Unknown builtin name or malformed catalog parameter"""


class StructuralError(MedialddError):
    """A decision diagram violates ordering or reduction"""


class BudgetExceededError(MedialddError):
    """A permutation or enumeration budget would be exceeded"""

    def __init__(self, message: str, limit: int, requested: int):
        super().__init__(message)
        self.limit = limit
        self.requested = requested


class NotWellDefinedError(MedialddError):
    """Gated multi-variable abstraction refused for a non-medial operation"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class ParseError(MedialddError):
    """Input file violates its format"""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.source = source

    def __str__(self):
        return f"{self.source}: line {self.line}, column {self.column}: {self.message}"
