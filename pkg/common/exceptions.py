"""Exception hierarchy shared by every package."""

from typing import Optional


class NumericsError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(NumericsError, ValueError):
    """An input violates an operation's precondition."""


class RegimeError(InvalidArgumentError):
    """An oracle was asked to evaluate outside its validated regime."""


class PoleError(NumericsError, ArithmeticError):
    """Evaluation at a pole of a meromorphic function."""

    def __init__(self, function: str, point: complex):
        super().__init__(f"{function} has a pole at s={point}")
        self.function = function
        self.point = point


class ConvergenceError(NumericsError, RuntimeError):
    """A series or quadrature failed to reach its stopping criterion."""


class ConfigurationError(NumericsError):
    """Invalid or unreadable configuration."""


class EigenvalueFormatError(InvalidArgumentError):
    """Malformed line in an eigenvalue file."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)
        self.line_number = line_number
