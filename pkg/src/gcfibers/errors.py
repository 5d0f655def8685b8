"""Exception hierarchy.

Every error carries the process exit code the CLI should use for it:
1 for usage mistakes, 2 for invalid mathematical input, 3 for internal
invariant violations.
"""


class GCError(Exception):
    exit_code = 2


class UsageError(GCError):
    exit_code = 1


class ShapeError(GCError):
    pass


class DomainError(GCError):
    pass


class NormalizationError(GCError):
    """Raised when an operation needs the monotone (m = 0) spectrum."""


class PreconditionError(GCError):
    pass


class InvalidFaceError(GCError):
    pass


class EnumerationLimitError(GCError):
    pass


class OracleLimitError(GCError):
    pass


class SolverError(GCError):
    exit_code = 3


class InvariantError(GCError):
    exit_code = 3
