"""Exception hierarchy shared by the library, CLI, and service."""


class SubstreamError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SubstreamError):
    """An operation was called with out-of-range or inconsistent parameters."""


class DataError(SubstreamError):
    """Input data violates the format or the model's constraints."""


class ParseError(DataError):
    """A malformed line in an edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FormatError(DataError):
    """A serialized index file is corrupt, truncated, or unsupported."""


class InvariantError(SubstreamError):
    """An internal invariant was violated; indicates a bug."""
