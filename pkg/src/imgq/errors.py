"""Exception types shared across the package."""


class ImgqError(Exception):
    """Base class for all package-specific errors."""


class DecodeError(ImgqError):
    """Raised when an image byte stream cannot be decoded."""


class UnsupportedConversion(ImgqError):
    """Raised for a colorspace conversion the raster module does not define."""


class InvalidSigma(ImgqError):
    """Raised when a Gaussian sigma is not strictly positive."""


class TooSmall(ImgqError):
    """Raised when an image is too small for the requested operation."""


class ImageTooSmall(TooSmall):
    """Raised when an image is below the minimum extent for full extraction."""


class DegenerateImage(ImgqError):
    """Raised in strict mode when an image has no usable structure."""


class SchemaMismatch(ImgqError):
    """Raised when a feature file does not match the current schema."""


class DimensionMismatch(ImgqError):
    """Raised when a feature matrix width does not match a fitted model."""


class DegenerateLabels(ImgqError):
    """Raised when labels contain a single class where two are required."""


class InsufficientClassMembers(ImgqError):
    """Raised when a class is too small to appear in both split halves."""


class EmptyInput(ImgqError):
    """Raised when an operation receives an empty collection."""
