"""Exception types raised across the package."""


class NwlError(ValueError):
    """Base class for all package errors."""


class DimensionMismatch(NwlError):
    pass


class InvalidIndex(NwlError):
    pass


class NotHermitian(NwlError):
    pass


class OutOfRange(NwlError):
    pass


class InvalidState(NwlError):
    pass


class NotNormalized(NwlError):
    pass


class EmptyCounts(NwlError):
    pass


class LengthMismatch(NwlError):
    pass


class InvalidObservable(NwlError):
    pass


class OutOfPhysicalRange(NwlError):
    pass
