"""Exception hierarchy shared by all modules."""


class DeflaurentError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(DeflaurentError, ValueError):
    pass


class DivisionByZero(DeflaurentError, ZeroDivisionError):
    pass


class SpecMismatch(DeflaurentError, ValueError):
    """Operands belong to rings built from different deformation data."""


class PrecisionExhausted(DeflaurentError, ArithmeticError):
    """The truncation floor leaves nothing (or too little) to compute with."""


class NotInCompletion(DeflaurentError, ArithmeticError):
    """A series failed the leading-term membership test of the completion.

    ``degree`` and ``coefficient`` record the step at which rebasing failed.
    """

    def __init__(self, message, degree=None, coefficient=None):
        super().__init__(message)
        self.degree = degree
        self.coefficient = coefficient


class NotSolvable(DeflaurentError, ArithmeticError):
    pass


class ParseError(DeflaurentError, ValueError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = message
        if position is not None:
            detail += f" at position {position}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class EvalError(DeflaurentError, ValueError):
    """Expression evaluation failed; ``kind`` names the failure."""

    def __init__(self, kind, message=""):
        self.kind = kind
        super().__init__(f"{kind}: {message}" if message else kind)
