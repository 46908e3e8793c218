"""Input validation helpers shared by the estimators and feature functions."""

from __future__ import annotations

import os

import numpy as np

from .errors import TooSmall, UnsupportedConversion
from .raster import RGB, GRAY, RasterImage, decode_image, load_image


def as_raster(x) -> RasterImage:
    """Coerce bytes, a path, an array or a RasterImage to a RasterImage.

    Arrays must be float in [0, 1]: ``(h, w, 3)`` becomes RGB, ``(h, w)`` Gray.
    """
    if isinstance(x, RasterImage):
        return x
    if isinstance(x, (bytes, bytearray)):
        return decode_image(bytes(x))
    if isinstance(x, (str, os.PathLike)):
        return load_image(x)
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 2:
        return RasterImage(arr, GRAY).validate()
    if arr.ndim == 3 and arr.shape[2] == 3:
        return RasterImage(arr, RGB).validate()
    raise ValueError(f"cannot interpret array of shape {arr.shape} as an image")


def require_rgb(img, op: str) -> RasterImage:
    img = as_raster(img)
    if img.colorspace != RGB:
        raise UnsupportedConversion(f"{op} requires an RGB image, got {img.colorspace}")
    return img


def require_min_extent(img, extent: int, op: str,
                       exc: type = TooSmall) -> RasterImage:
    img = as_raster(img)
    if min(img.height, img.width) < extent:
        raise exc(
            f"{op} requires at least {extent}x{extent} pixels, "
            f"got {img.height}x{img.width}"
        )
    return img


def check_matrix(X, n_features: int | None = None) -> None:
    """Validate a 2-D feature matrix (dense or scipy sparse)."""
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={X.ndim}")
    if n_features is not None and X.shape[1] != n_features:
        from .errors import DimensionMismatch

        raise DimensionMismatch(
            f"matrix has {X.shape[1]} columns, model expects {n_features}"
        )


def check_binary_labels(y) -> np.ndarray:
    y = np.asarray(y)
    uniq = np.unique(y)
    if not np.all(np.isin(uniq, (0, 1))):
        raise ValueError(f"labels must be 0/1, got values {uniq!r}")
    return y.astype(np.float64)
