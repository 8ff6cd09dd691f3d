"""Exception hierarchy shared by all gramlab modules."""


class GramLabError(Exception):
    """Base class for all gramlab errors."""


class DomainError(GramLabError):
    """Input outside the mathematical domain of the operation."""


class ConvergenceError(GramLabError):
    """An iterative solver failed after its documented retry schedule."""


class PrecisionError(GramLabError):
    """The requested accuracy cannot be met in binary64."""


class PreconditionError(GramLabError):
    """A stated precondition of the operation is violated."""


class UncertifiedRange(GramLabError):
    """The requested range has no completeness certificate."""


class ResourceError(GramLabError):
    """Input exceeds a configured resource ceiling (sieve size, brute force)."""


class ChecksumMismatch(GramLabError):
    """Persisted data does not match its manifest checksum."""


class VersionMismatch(GramLabError):
    """Persisted data has an unsupported format version."""


class ParseError(GramLabError):
    """External table could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
