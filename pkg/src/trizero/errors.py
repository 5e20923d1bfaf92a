"""Exception types shared across the package.

The CLI maps these onto exit codes, so keep the hierarchy flat.
"""


class TrizeroError(Exception):
    """Base class for all package errors."""


class ParseError(TrizeroError):
    """Malformed field or polynomial text. ``pos`` is a 0-based offset."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class PreconditionError(TrizeroError, ValueError):
    """An input violated an operation's precondition.

    ``witness`` carries whatever made the check fail (a nonzero divergence,
    an offending index, ...) so callers can report it.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class InconsistencyError(TrizeroError, RuntimeError):
    """An internal identity that must hold did not (a bug, not bad input)."""
