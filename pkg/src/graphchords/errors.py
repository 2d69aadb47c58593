"""Exception hierarchy shared across the package."""


class ChordError(Exception):
    """Base class for all package errors."""


class PreconditionError(ChordError, ValueError):
    """An operation was called outside its documented domain."""


class SolverInternalError(ChordError, RuntimeError):
    """An exhaustive exact search failed where a theorem guarantees success.

    This is never swallowed: it signals either a bug or an input that
    silently violated a precondition, and callers are expected to let it
    propagate loudly.
    """
