"""Exception types raised across the package."""
from __future__ import annotations


class MaxdepError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionError(MaxdepError, ValueError):
    """Array shape or subset size outside the supported domain."""


class NonFiniteError(MaxdepError, ValueError):
    """A NaN or infinity was found where only finite reals are allowed."""

    def __init__(self, row: int, col: int, label: str | None = None):
        self.row = row
        self.col = col
        where = f"row {row}, column {col}"
        if label is not None:
            where += f" ({label!r})"
        super().__init__(f"non-finite value at {where}")


class DuplicateLabelError(MaxdepError, ValueError):
    """Two columns share the same location label."""


class RangeError(MaxdepError, ValueError):
    """A numeric argument lies outside its documented range."""


class InvariantError(MaxdepError, ValueError):
    """A constructed object violates one of its structural invariants."""


class ParseError(MaxdepError, ValueError):
    """Malformed CSV input. Coordinates are 1-based; row counts the header."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        self.row = row
        self.col = col
        if row is not None:
            at = f"row {row}" + (f", column {col}" if col is not None else "")
            message = f"{message} ({at})"
        super().__init__(message)


class MissingValueError(MaxdepError, ValueError):
    """An empty cell was found and incomplete rows were not allowed."""

    def __init__(self, row: int, col: int):
        self.row = row
        self.col = col
        super().__init__(
            f"missing value at row {row}, column {col}; "
            "pass drop_incomplete to skip incomplete rows"
        )
