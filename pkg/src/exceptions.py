"""
Exception hierarchy shared by every subpackage.

Validation problems derive from ``ValueError`` and numerical failures from
``ArithmeticError`` so callers can catch either family without importing
this module.
"""
from typing import Optional


class SchrodingerError(Exception):
    """Base class for all toolkit errors"""


class ValidationError(SchrodingerError, ValueError):
    """Input rejected before any numerics ran"""


class PotentialSyntaxError(ValidationError):
    """Potential source text does not follow the grammar"""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class PotentialDomainError(ValidationError):
    """Potential violates a structural or floor invariant, or x is off-domain"""


class ScenarioError(ValidationError):
    """Scenario file has a malformed key/value line"""


class NumericalError(SchrodingerError, ArithmeticError):
    """A numerical procedure failed"""

    def __init__(self, message: str, n: Optional[int] = None):
        self.n = n
        if n is not None:
            message = f"n={n}: {message}"
        super().__init__(message)


class QuadratureError(NumericalError):
    """Adaptive quadrature did not converge"""


class EigenCapError(NumericalError):
    """Matrix size exceeds the eigensolver cap"""


class FitError(NumericalError):
    """Not enough usable records to fit an error law"""
