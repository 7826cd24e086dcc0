"""Exception types shared across the package."""


class SpecxError(Exception):
    """Base class for all package errors."""


class GraphFormatError(SpecxError):
    """Malformed graph6/digraph6/edge-list input.

    Carries the byte offset (or line number for edge lists) of the first
    offending position when known.
    """

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        loc = ""
        if offset is not None:
            loc = f" (byte offset {offset})"
        elif line is not None:
            loc = f" (line {line})"
        super().__init__(message + loc)
        self.offset = offset
        self.line = line


class DisconnectedGraphError(SpecxError):
    """Operation requires a connected graph."""


class NotStronglyConnectedError(SpecxError):
    """Operation requires a strongly connected digraph."""


class ConvergenceError(SpecxError):
    """Eigensolver failed to reach the requested residual."""


class PartitionError(SpecxError):
    """Vertex cells do not form a partition, or the partition is not equitable."""


class FamilyParameterError(SpecxError):
    """Extremal-family parameters violate a feasibility inequality."""


class PreconditionError(SpecxError):
    """Arguments do not satisfy the operation's stated hypothesis."""
