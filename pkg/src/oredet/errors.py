"""Exception hierarchy; the CLI maps each branch to an exit code."""

from typing import Optional


class OreDetError(Exception):
    exit_code = 1


class InputError(OreDetError):
    """Unreadable or malformed input (exit code 1)."""


class ParseError(InputError):
    def __init__(self, message: str, text: Optional[str] = None, position: int = 0):
        self.text = text
        self.position = position
        super().__init__(message if text is None else f"{message} at column {position + 1}")


class MatrixFormatError(InputError):
    pass


class DomainError(OreDetError):
    """A mathematical precondition does not hold (exit code 2)."""

    exit_code = 2


class ZeroDeterminantError(DomainError):
    pass


class DegeneracyError(DomainError):
    pass


class NotMajorantError(DomainError):
    pass


class NoKernelError(DomainError):
    pass


class GenerationError(DomainError):
    pass


class ConsistencyError(OreDetError):
    """Two independent computations disagree; always an implementation bug."""

    exit_code = 3
