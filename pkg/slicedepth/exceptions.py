"""Errors raised by the slicedepth library."""

from __future__ import annotations


class SliceDepthError(Exception):
    """Base class for all slicedepth errors."""


class ShapeError(SliceDepthError, ValueError):
    """Error to indicate an invalid shape or an index outside of it."""


class ShapeMismatchError(SliceDepthError):
    """Error to indicate monomials over variable arrays of different dimension."""


class FieldMismatchError(SliceDepthError):
    """Error to indicate polynomials over different coefficient fields were combined."""


class CharacteristicError(SliceDepthError):
    """Error to indicate an operation that needs characteristic 0 was used over F_p."""


class PolynomialSyntaxError(SliceDepthError):
    """Error to indicate a polynomial expression could not be parsed."""

    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        """Record where parsing failed."""
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVariableError(PolynomialSyntaxError):
    """Error to indicate a variable index outside the declared shape."""


class NotSliceFactoredError(SliceDepthError):
    """Error to indicate a monomial is not a product of slices."""


class CertificateError(SliceDepthError):
    """Error to indicate a depth certificate did not pass."""


class ResolutionError(SliceDepthError):
    """Error to indicate a free resolution could not be computed."""


class InvalidCommand(SliceDepthError):
    """Error to indicate the command line arguments are invalid."""
