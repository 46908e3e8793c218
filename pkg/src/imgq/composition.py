"""Composition features: saliency, rule-of-thirds occupancy, region count."""

from __future__ import annotations

import numpy as np

from ._mser import count_stable_regions
from .errors import TooSmall
from .raster import (
    RasterImage,
    _resize_plane,
    gaussian_blur,
    gray_plane,
)
from .validation import as_raster

SALIENCY_EPS = 1e-12
_SALIENCY_SIZE = 64
_SALIENCY_SIGMA = 2.5

# Column/row fractional widths of the 5x5 thirds grid: wide margins, three
# narrow bands straddling the thirds lines.
THIRDS_FRACTIONS = (0.25, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.25)


def spectral_residual_saliency(
    img: RasterImage | np.ndarray, eps: float = SALIENCY_EPS
) -> np.ndarray:
    """Spectral-residual saliency map, max-normalized to [0, 1].

    The gray plane is resized to 64x64; the log-magnitude spectrum minus its
    3x3 box average forms the residual, which is recombined with the original
    phase, inverted, squared, smoothed (sigma 2.5) and resized back to the
    source size. Constant images have no residual structure and return an
    all-zero map.
    """
    gray = gray_plane(as_raster(img))
    h, w = gray.shape
    if gray.max() - gray.min() <= 0.0:
        return np.zeros((h, w))
    small = _resize_plane(gray, _SALIENCY_SIZE, _SALIENCY_SIZE)
    spectrum = np.fft.fft2(small)
    log_mag = np.log(np.abs(spectrum) + eps)
    padded = np.pad(log_mag, 1, mode="edge")
    box = (
        padded[:-2, :-2] + padded[:-2, 1:-1] + padded[:-2, 2:]
        + padded[1:-1, :-2] + padded[1:-1, 1:-1] + padded[1:-1, 2:]
        + padded[2:, :-2] + padded[2:, 1:-1] + padded[2:, 2:]
    ) / 9.0
    residual = log_mag - box
    recombined = np.exp(residual) * np.exp(1j * np.angle(spectrum))
    sal = np.abs(np.fft.ifft2(recombined)) ** 2
    sal = gaussian_blur(sal, _SALIENCY_SIGMA)
    sal = _resize_plane(sal, h, w)
    peak = sal.max()
    if peak > 0.0:
        sal = sal / peak
    return np.clip(sal, 0.0, 1.0)


def thirds_boundaries(extent: int) -> np.ndarray:
    """Integer cell boundaries of the 5x5 thirds grid along one axis."""
    cum = np.concatenate([[0.0], np.cumsum(THIRDS_FRACTIONS)])
    bounds = np.floor(extent * cum + 0.5).astype(np.int64)
    bounds[0] = 0
    bounds[-1] = extent
    return np.maximum.accumulate(bounds)


def thirds_map(sal: np.ndarray) -> np.ndarray:
    """Mean saliency in each cell of the 5x5 thirds grid, row-major (25,).

    The three center bands along each axis are one-sixth wide and straddle
    the rule-of-thirds lines; the margins take the remaining quarters.
    """
    sal = np.asarray(sal, dtype=np.float64)
    if sal.ndim != 2:
        raise ValueError("saliency map must be 2-D")
    h, w = sal.shape
    if h < 5 or w < 5:
        raise TooSmall(f"thirds_map needs at least 5x5 pixels, got {h}x{w}")
    rows = thirds_boundaries(h)
    cols = thirds_boundaries(w)
    out = np.empty(25)
    for i in range(5):
        for j in range(5):
            cell = sal[rows[i]:rows[i + 1], cols[j]:cols[j + 1]]
            out[i * 5 + j] = cell.mean()
    return out


def mser_count(
    img: RasterImage,
    delta: int = 5,
    min_area_frac: float = 1e-4,
    max_area_frac: float = 0.25,
    max_variation: float = 0.25,
    min_diversity: float = 0.2,
) -> int:
    """Number of maximally stable extremal regions, both polarities.

    Area bounds scale with the pixel count: min max(1, round(min_area_frac *
    n)), max int(max_area_frac * n). Constant images contain no stable region.
    """
    gray = np.clip(np.rint(gray_plane(as_raster(img)) * 255.0), 0, 255).astype(np.uint8)
    n = gray.size
    min_area = max(1, int(round(min_area_frac * n)))
    max_area = int(max_area_frac * n)
    return count_stable_regions(
        gray, delta, min_area, max_area, max_variation, min_diversity
    )
