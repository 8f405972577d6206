"""Exception hierarchy shared by the kernel and the CLI."""


class CarlitzFormsError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class DomainError(CarlitzFormsError, ValueError):
    """An argument lies outside the domain of an operation."""

    exit_code = 2


class PrecisionError(CarlitzFormsError, ArithmeticError):
    """A result was requested beyond the precision its inputs support."""

    exit_code = 3


class ParseError(CarlitzFormsError, ValueError):
    """Malformed serialized input."""

    exit_code = 1

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
