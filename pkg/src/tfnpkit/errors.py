"""Shared error taxonomy.

Every module raises these so callers (and the CLI) can tell apart bad
arguments, inputs outside the supported desk scale, malformed text, and
internal invariant breakage.
"""


class DomainError(ValueError):
    """An argument violates an operation's stated precondition."""


class CapabilityError(ValueError):
    """The request is legal but outside the supported parameter range."""


class OutOfRangeError(DomainError):
    """A decoder was handed a rank past the end of its codomain."""


class ParseError(ValueError):
    """Malformed text input; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IntegrityError(AssertionError):
    """An internal soundness invariant failed; never expected on valid data."""
