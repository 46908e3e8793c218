"""Global simplicity features: edge spread, hue count, contrast, brightness.

Each feature is a single scalar per image. Conventions shared by the window
features: mass distributions are normalized to sum 1 and the reported window
is the smallest contiguous run of bins holding at least 98% of total mass.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateImage
from .raster import (
    HSV,
    LAB,
    RasterImage,
    convert_colorspace,
    histogram256,
    laplacian_3x3,
    _resize_plane,
)
from .validation import require_rgb

MASS_FRACTION = 0.98
HUE_BINS = 20
_PROJECTION_SIZE = 100
# Relative slack for "window holds >= 98% of mass" under float accumulation.
_MASS_EPS = 1e-12


def minimal_mass_window(masses: np.ndarray, fraction: float = MASS_FRACTION) -> int:
    """Width of the smallest contiguous window holding >= ``fraction`` of mass.

    Scanned over every start position with a two-pointer sweep on prefix sums.
    A window qualifies when its mass reaches ``fraction`` of the total within a
    1e-12 relative slack, so exact-ratio inputs (uniform bins) are not lost to
    rounding. All-zero input counts as a single bin.
    """
    masses = np.asarray(masses, dtype=np.float64)
    if masses.ndim != 1 or masses.size == 0:
        raise ValueError("masses must be a nonempty 1-D array")
    if np.any(masses < 0.0):
        raise ValueError("masses must be nonnegative")
    n = masses.size
    prefix = np.concatenate([[0.0], np.cumsum(masses)])
    total = prefix[-1]
    if total <= 0.0:
        return 1
    target = fraction * total - _MASS_EPS * total
    best = n
    end = 0
    for start in range(n):
        if end < start + 1:
            end = start + 1
        while prefix[end] - prefix[start] < target:
            end += 1
            if end > n:
                return best
        best = min(best, end - start)
    return best


def spatial_edge_distribution(img: RasterImage, strict: bool = False) -> float:
    """1 - (wx * wy) / 100 for the 98%-mass window of projected edge energy.

    The Laplacian magnitude is resized to 100x100, normalized to unit mass and
    projected onto rows and columns; ``wx``/``wy`` are the minimal window
    widths in percent. Tightly clustered edges score near 1, diffuse edges
    near 0. Images with zero edge mass score 0.0, or raise
    :class:`DegenerateImage` when ``strict``.
    """
    img = require_rgb(img, "spatial_edge_distribution")
    lap = laplacian_3x3(img)
    grid = _resize_plane(lap, _PROJECTION_SIZE, _PROJECTION_SIZE)
    total = grid.sum()
    if total <= 0.0:
        if strict:
            raise DegenerateImage("image has no edge mass")
        return 0.0
    grid = grid / total
    wx = minimal_mass_window(grid.sum(axis=0))
    wy = minimal_mass_window(grid.sum(axis=1))
    return 1.0 - (wx * wy) / (_PROJECTION_SIZE * _PROJECTION_SIZE)


def hue_count(img: RasterImage, alpha: float = 0.05) -> float:
    """20 minus the number of significantly occupied hue bins.

    Pixels with V in [0.15, 0.95] and S > 0.2 vote into 20 hue bins; a bin is
    occupied when its count strictly exceeds ``alpha`` times the maximum bin.
    Grayscale images have no voting pixels and score 20.
    """
    img = require_rgb(img, "hue_count")
    hsv = convert_colorspace(img, HSV).data
    h, s, v = hsv[..., 0], hsv[..., 1], hsv[..., 2]
    mask = (v >= 0.15) & (v <= 0.95) & (s > 0.2)
    if not mask.any():
        return float(HUE_BINS)
    bins = np.minimum((h[mask] / (360.0 / HUE_BINS)).astype(np.int64), HUE_BINS - 1)
    counts = np.bincount(bins, minlength=HUE_BINS)
    occupied = int(np.count_nonzero(counts > alpha * counts.max()))
    return float(HUE_BINS - occupied)


def contrast(img: RasterImage) -> float:
    """Width of the 98%-mass window of the summed RGB histogram, over 256.

    Each channel is quantized to 256 levels; the three histograms are summed
    before the window search. Constant images score 1/256, full-range images
    approach 1.
    """
    img = require_rgb(img, "contrast")
    counts = np.zeros(256)
    for k in range(3):
        counts += histogram256(img.data[..., k]).counts
    return minimal_mass_window(counts) / 256.0


def brightness(img: RasterImage) -> float:
    """Mean lightness (Lab L) over the image, in [0, 100]."""
    img = require_rgb(img, "brightness")
    return float(convert_colorspace(img, LAB).data[..., 0].mean())
