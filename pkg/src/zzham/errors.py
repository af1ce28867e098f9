"""Exception types shared across the package.

Kept free of any numerical logic so that the brute-force reference module
can import it without depending on the closed-form code paths.
"""

from __future__ import annotations


class ModelFormatError(ValueError):
    """A model file or dictionary does not match the documented schema."""


class DimensionMismatchError(ValueError):
    """Operands do not have compatible dimensions."""


class SingularMatrixError(ArithmeticError):
    """Inversion or solving failed because of a (numerically) zero pivot.

    ``positions`` holds the offending diagonal labels or pivot indices.
    """

    def __init__(self, message, positions=()):
        super().__init__(message)
        self.positions = tuple(positions)


class NonDiagonalizableError(ArithmeticError):
    """The model has at least one Jordan block, so no eigenbasis exists.

    ``pairs`` lists the offending index pairs: ``(i, j)`` block pairs for
    block-coupled models, or ``(k, k + 1)`` positions for zig-zag models.
    """

    def __init__(self, message, pairs=()):
        super().__init__(message)
        self.pairs = tuple(pairs)


class InvalidWeightError(ValueError):
    """A metric weight vector contains non-positive or non-finite entries."""


class PatternTooWideError(ValueError):
    """The coupling pattern does not fit the requested banded target form."""
