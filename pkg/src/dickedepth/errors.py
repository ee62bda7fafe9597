"""Exception hierarchy shared by the library and the command line."""


class DickeDepthError(Exception):
    """Base class for every error raised by dickedepth."""


class DomainError(DickeDepthError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class ParseError(DickeDepthError, ValueError):
    """Malformed measurement-record input.

    ``line`` is 1-based; ``column`` names the offending field when known.
    """

    def __init__(self, reason, line=None, column=None):
        self.reason = reason
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + reason)


class ValidationError(DickeDepthError, ValueError):
    """A well-formed record violates a record invariant."""


class NumericalError(DickeDepthError, RuntimeError):
    """A numerical routine produced a result that fails its own checks."""
