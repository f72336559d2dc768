"""Exception hierarchy.

Input problems derive from :class:`InputError` so callers (and the CLI) can
map them to a single exit code.
"""


class CycloCoverError(Exception):
    pass


class InputError(CycloCoverError, ValueError):
    pass


class MalformedLine(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class SelfLoop(InputError):
    pass


class Disconnected(InputError):
    pass


class MinDegreeTooSmall(InputError):
    pass


class UnknownProblemTag(InputError):
    pass


class InvalidSpec(InputError):
    pass


class EvenCycleLength(InvalidSpec):
    pass


class TooManyEdges(InvalidSpec):
    pass


class LimitExceeded(CycloCoverError):
    """Exact search would exceed its size or work budget."""


class InternalInvariantViolation(CycloCoverError, AssertionError):
    """A construction produced something its correctness argument rules out."""
