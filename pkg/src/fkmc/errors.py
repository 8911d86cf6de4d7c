"""Exception types shared across the package."""


class FkmcError(Exception):
    """Base class for all package errors."""


class DisconnectedGraph(FkmcError):
    pass


class BadOrigin(FkmcError):
    pass


class DuplicateEdge(FkmcError):
    pass


class KindMismatch(FkmcError):
    pass


class TimestampCollision(FkmcError):
    pass


class NotFound(FkmcError):
    pass


class QueryAtDeath(FkmcError):
    pass


class PointOutsideRegion(FkmcError):
    pass


class UnsupportedQ(FkmcError):
    pass


class TooLarge(FkmcError):
    pass


class DegenerateGroundState(FkmcError):
    pass


class NonPositiveEstimate(FkmcError):
    pass


class NoBracketing(FkmcError):
    pass
