"""Exception types raised across the package."""


class SpectralShiftError(Exception):
    """Base class for all errors raised by this package."""


class EmptyChannelError(SpectralShiftError):
    """A histogram was requested for a channel with zero pixels."""


class ZeroTotalError(SpectralShiftError):
    """An operation needed a histogram with at least one counted pixel."""


class EmptySequenceError(SpectralShiftError):
    """An aggregation was invoked on an empty sequence."""


class EmptyPoolError(SpectralShiftError):
    """A target pool was built from zero images."""


class MissingPoolError(SpectralShiftError):
    """A matching-based method was requested without a target pool."""


class ParseError(SpectralShiftError):
    """A manifest or data file failed structural validation."""


class DuplicateIdError(ParseError):
    """Two manifest records share the same id."""


class EmptyManifestError(ParseError):
    """A manifest contains no records."""


class UnsupportedFormatError(SpectralShiftError):
    """An image file is not in the supported 8-bit PNG layout."""


class DimensionMismatchError(SpectralShiftError):
    """Two rasters that must share dimensions do not."""


class NonFiniteError(SpectralShiftError):
    """A reward value was NaN or infinite."""


class BatchItemError(SpectralShiftError):
    """A batch operation failed on one record; carries the offending id."""

    def __init__(self, record_id: str, message: str):
        super().__init__(f"record '{record_id}': {message}")
        self.record_id = record_id
