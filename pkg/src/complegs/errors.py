class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class CFDivisionByZero(ZeroDivisionError):
    """A relaxed continued fraction has a suffix evaluating to exactly 0."""


class SingularMatrix(ArithmeticError):
    pass


class InvariantViolation(AssertionError):
    """Two independent computations of the same quantity disagreed."""
