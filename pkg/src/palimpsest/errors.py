"""Exception types shared across the toolkit."""


class PalimpsestError(Exception):
    """Base class for all toolkit errors."""


class ParseError(PalimpsestError):
    """Malformed input file. Carries the byte offset where decoding failed."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedFormat(PalimpsestError):
    """Recognized but unsupported file variant (bit depth, color type, ...)."""


class DimensionMismatch(PalimpsestError):
    """Operands have incompatible widths/heights."""


class FullyMaskedError(PalimpsestError):
    """Every pixel is masked; there is nothing to interpolate from."""


class KernelTooLarge(PalimpsestError):
    """The dilated smoothing kernel does not fit inside the image."""


class FilterSpecError(PalimpsestError):
    """Gain/threshold arrays do not match the decomposition level count."""


class DegenerateLandmarks(PalimpsestError):
    """Landmark geometry carries no usable information (zero spread)."""


class MissingMeasurement(PalimpsestError):
    """An optional measurement required by this operation is absent."""
