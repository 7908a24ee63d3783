"""
Exception hierarchy for the umbral engine.

Input problems, guard violations and arithmetic failures each get their own
class so the command line can map them to exit codes.
"""


class UmbralError(Exception):
    """Base exception for every error raised by the engine."""
    pass


class InputError(UmbralError, ValueError):
    """Exception raised for malformed or inconsistent input."""
    pass


class ParseError(InputError):
    """Exception raised when multiset, bracket or JSON syntax cannot be parsed."""
    pass


class EmptyMultisetError(InputError):
    """Exception raised when an operation needs a non-empty multiset."""

    def __init__(self, message: str = "empty multiset has no subdivisions"):
        super().__init__(message)


class GuardViolation(UmbralError):
    """Exception raised when a request exceeds a configured size guard."""

    def __init__(self, message: str, limit: int = None, requested: int = None):
        super().__init__(message)
        self.limit = limit
        self.requested = requested


class ZeroDenominatorError(UmbralError, ZeroDivisionError):
    """Exception raised for a zero denominator."""
    pass
