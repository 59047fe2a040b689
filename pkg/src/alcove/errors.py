"""Exception hierarchy.

Every error raised deliberately by the package derives from ``AlcoveError``.
The CLI maps ``PreconditionError`` subclasses to exit code 2 and
``CapExceeded`` to exit code 3.
"""


class AlcoveError(Exception):
    """Base class."""


class PreconditionError(AlcoveError, ValueError):
    """An input violates a mathematical precondition."""


class CapExceeded(AlcoveError):
    """An enumeration would exceed the configured cap."""


class NotRegular(PreconditionError):
    pass


class NotInCorridor(PreconditionError):
    pass


class IncompatiblePresentations(PreconditionError):
    pass


class DepthTooShallow(PreconditionError):
    pass


class NotRestricted(PreconditionError):
    pass


class WrongRank(PreconditionError):
    pass


class RamificationTooLarge(PreconditionError):
    pass


class PartitionMismatch(PreconditionError):
    pass


class NoCompatiblePresentation(PreconditionError):
    pass


class ShapeNotExtremal(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class NoSolution(PreconditionError):
    pass


class WrongCoset(PreconditionError):
    pass


class ParseError(AlcoveError, ValueError):
    """Malformed textual input."""
