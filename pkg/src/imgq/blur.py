"""Blur estimators: frequency occupancy and edge-structure sharpness loss."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import RasterImage, build_wavelet_pyramid, fft2_magnitude, gray_plane
from .validation import as_raster, require_min_extent

EDGE_THRESHOLD = 35.0 / 255.0
THETA_SCALE = 5.0


def blur_frequency(
    img: RasterImage | np.ndarray,
    theta: float | None = None,
    theta_scale: float = THETA_SCALE,
) -> float:
    """Fraction of DFT coefficients with magnitude above ``theta``.

    When ``theta`` is None it defaults to ``theta_scale`` times the mean
    non-DC magnitude, making the measure contrast-adaptive. Sharp images keep
    energy spread across many frequencies and score high; blurred images
    concentrate it near DC and score low.
    """
    mag = fft2_magnitude(as_raster(img))
    n = mag.size
    if theta is None:
        ac_mean = (mag.sum() - mag[0, 0]) / max(1, n - 1)
        theta = theta_scale * ac_mean
    return float(np.count_nonzero(mag > theta)) / n


@dataclass(frozen=True)
class EdgeStructureCounts:
    """Edge census from the 3-level Haar analysis."""

    n_edge: int
    n_dirac_astep: int
    n_gstep_roof: int
    n_blurred: int


def _pooled_emax(level, window: int) -> np.ndarray:
    detail = np.maximum(np.abs(level.hl), np.maximum(np.abs(level.lh), np.abs(level.hh)))
    h, w = detail.shape
    rows = np.arange(0, h, window)
    cols = np.arange(0, w, window)
    return np.maximum.reduceat(np.maximum.reduceat(detail, rows, axis=0), cols, axis=1)


def edge_structure_counts(
    img: RasterImage, threshold: float = EDGE_THRESHOLD
) -> EdgeStructureCounts:
    """Classify edge points from per-level Haar detail maxima.

    Level-k detail magnitudes are max-pooled over 8x8, 4x4 and 2x2 windows
    (finest to coarsest) so all three land on a common grid. A grid point is
    an edge if any pooled maximum exceeds ``threshold``; Dirac/A-step edges
    have Emax1 > Emax2 > Emax3, G-step/Roof edges have Emax1 < Emax2 < Emax3
    or Emax2 above both neighbors, and a G-step/Roof edge has lost sharpness
    when Emax1 < threshold.
    """
    img = require_min_extent(img, 8, "edge_structure_counts")
    pyr = build_wavelet_pyramid(gray_plane(img), 3)
    e1 = _pooled_emax(pyr.levels[0], 8)
    e2 = _pooled_emax(pyr.levels[1], 4)
    e3 = _pooled_emax(pyr.levels[2], 2)
    edge = (e1 > threshold) | (e2 > threshold) | (e3 > threshold)
    dirac = edge & (e1 > e2) & (e2 > e3)
    gstep = edge & (((e1 < e2) & (e2 < e3)) | ((e2 > e1) & (e2 > e3)))
    blurred = gstep & (e1 < threshold)
    return EdgeStructureCounts(
        n_edge=int(edge.sum()),
        n_dirac_astep=int(dirac.sum()),
        n_gstep_roof=int(gstep.sum()),
        n_blurred=int(blurred.sum()),
    )


def blur_edge_structure(img: RasterImage, threshold: float = EDGE_THRESHOLD) -> float:
    """Share of gradual edges that lost sharpness: n_blurred / max(1, n_gstep_roof)."""
    counts = edge_structure_counts(img, threshold)
    return counts.n_blurred / max(1, counts.n_gstep_roof)
