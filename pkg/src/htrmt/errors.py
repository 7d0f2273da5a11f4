"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit status the CLI maps it to.
"""


class HtrmtError(Exception):
    exit_code = 1


class UsageError(HtrmtError, ValueError):
    """Bad arguments: wrong ring for a family, insufficient order, mixed scalar variants."""

    exit_code = 2


class SingularParameterError(HtrmtError, ZeroDivisionError):
    """A recurrence denominator vanishes at the supplied parameters."""

    exit_code = 3

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DomainError(HtrmtError, ValueError):
    exit_code = 2


class PoleError(HtrmtError, ZeroDivisionError):
    exit_code = 3


class DegenerateConnectionError(HtrmtError, ValueError):
    """Connection coefficient 1/sin(pi*a1) hit at an integer exponent without the limit policy."""

    exit_code = 3


class PrecisionError(HtrmtError, ArithmeticError):
    exit_code = 1


class ToleranceError(HtrmtError, ArithmeticError):
    exit_code = 1


class VerificationFailure(HtrmtError):
    exit_code = 4
