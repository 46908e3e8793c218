"""Texture and depth-of-field features from detail-power planes.

Smoothness and DOF features operate on the Lab lightness plane so they share
one photometric scale; the LBP pyramid codes the gray plane. Detail power is
always the squared transform coefficient.
"""

from __future__ import annotations

import numpy as np

from .raster import (
    LAB,
    RasterImage,
    build_laplacian_pyramid,
    build_wavelet_pyramid,
    convert_colorspace,
    gray_plane,
)
from .validation import require_min_extent, require_rgb

LBP_DIM = 5120  # 20 cells x 256 codes
_LBP_GRIDS = (2, 4)

# (dy, dx) of the 8 neighbors, starting east, counter-clockwise.
_LBP_OFFSETS = (
    (0, 1), (-1, 1), (-1, 0), (-1, -1),
    (0, -1), (1, -1), (1, 0), (1, 1),
)


def _lightness(img: RasterImage) -> np.ndarray:
    img = require_rgb(img, "texture features")
    return convert_colorspace(img, LAB).data[..., 0]


def _grid_bounds(extent: int, parts: int) -> np.ndarray:
    """Integer cell boundaries from rounded cumulative fractions; exact tiling."""
    fracs = np.arange(parts + 1) / parts
    bounds = np.floor(extent * fracs + 0.5).astype(np.int64)
    bounds[0] = 0
    bounds[-1] = extent
    return np.maximum.accumulate(bounds)


def grid_cell_sums(power: np.ndarray, parts: int) -> np.ndarray:
    """Row-major (parts, parts) sums of a power plane over the grid cells."""
    rows = _grid_bounds(power.shape[0], parts)
    cols = _grid_bounds(power.shape[1], parts)
    by_rows = np.add.reduceat(power, rows[:-1], axis=0)
    return np.add.reduceat(by_rows, cols[:-1], axis=1)


def wavelet_smoothness(img: RasterImage) -> float:
    """Mean squared finest-level Haar detail of the lightness plane.

    Sum of the squared HL, LH and HH subbands divided by 3MN, with M x N the
    subband size. Blur removes fine detail, so smoother images score lower.
    """
    img = require_min_extent(img, 8, "wavelet_smoothness")
    level = build_wavelet_pyramid(_lightness(img), 3).levels[0]
    m, n = level.hh.shape
    power = level.hl**2 + level.lh**2 + level.hh**2
    return float(power.sum() / (3.0 * m * n))


def laplacian_smoothness(img: RasterImage) -> float:
    """Mean squared second-finest Laplacian plane of the lightness plane."""
    img = require_min_extent(img, 16, "laplacian_smoothness")
    plane = build_laplacian_pyramid(_lightness(img), 3).levels[1]
    m, n = plane.shape
    return float((plane**2).sum() / (m * n))


def lbp_codes(plane: np.ndarray) -> np.ndarray:
    """8-neighbor radius-1 LBP codes of the interior pixels, shape (h-2, w-2).

    Bit k is set when the k-th neighbor (starting east, counter-clockwise) is
    >= the center, so constant regions code to 255.
    """
    plane = np.asarray(plane, dtype=np.float64)
    center = plane[1:-1, 1:-1]
    codes = np.zeros(center.shape, dtype=np.uint8)
    for bit, (dy, dx) in enumerate(_LBP_OFFSETS):
        neighbor = plane[1 + dy:plane.shape[0] - 1 + dy, 1 + dx:plane.shape[1] - 1 + dx]
        codes |= (neighbor >= center).astype(np.uint8) << bit
    return codes


def lbp_pyramid(img: RasterImage) -> np.ndarray:
    """Concatenated per-cell LBP histograms: 2x2 then 4x4 grid, row-major.

    Each cell contributes an L1-normalized 256-bin histogram of the codes it
    covers (all-zero when the cell is empty), 5120 values total.
    """
    img = require_min_extent(img, 8, "lbp_pyramid")
    codes = lbp_codes(gray_plane(img))
    h, w = codes.shape
    blocks = []
    for parts in _LBP_GRIDS:
        rows = _grid_bounds(h, parts)
        cols = _grid_bounds(w, parts)
        for i in range(parts):
            for j in range(parts):
                cell = codes[rows[i]:rows[i + 1], cols[j]:cols[j + 1]]
                hist = np.bincount(cell.ravel(), minlength=256).astype(np.float64)
                total = hist.sum()
                blocks.append(hist / total if total > 0 else hist)
    return np.concatenate(blocks)


def _center_ratio(power: np.ndarray) -> float:
    sums = grid_cell_sums(power, 4)
    total = sums.sum()
    if total <= 0.0:
        return 0.0
    return float(sums[1:3, 1:3].sum() / total)


def _finest_wavelet_power(img: RasterImage) -> np.ndarray:
    level = build_wavelet_pyramid(_lightness(img), 1).levels[0]
    return level.hl**2 + level.lh**2 + level.hh**2


def _finest_laplacian_power(img: RasterImage) -> np.ndarray:
    return build_laplacian_pyramid(_lightness(img), 1).levels[0] ** 2


def dof_wavelet(img: RasterImage) -> float:
    """Share of finest Haar detail power inside the four central 4x4-grid cells.

    Low depth of field concentrates detail on the centered subject, pushing
    the ratio toward 1; uniformly detailed scenes sit near 4/16.
    """
    img = require_min_extent(img, 16, "dof_wavelet")
    return _center_ratio(_finest_wavelet_power(img))


def dof_laplacian(img: RasterImage) -> float:
    """As :func:`dof_wavelet`, with the squared finest Laplacian plane."""
    img = require_min_extent(img, 16, "dof_laplacian")
    return _center_ratio(_finest_laplacian_power(img))


def dof_spatial_spread(img: RasterImage) -> float:
    """Detail-mass-weighted mean distance to the detail center of mass, over MN.

    l is the squared finest Laplacian plane; the distance of each location to
    the l-weighted center of mass is accumulated with weight l and divided by
    the plane size. Zero-mass planes return 0.
    """
    img = require_min_extent(img, 16, "dof_spatial_spread")
    power = _finest_laplacian_power(img)
    total = power.sum()
    m, n = power.shape
    if total <= 0.0:
        return 0.0
    rows = np.arange(m, dtype=np.float64)[:, None]
    cols = np.arange(n, dtype=np.float64)[None, :]
    c_row = (power * rows).sum() / total
    c_col = (power * cols).sum() / total
    dist = np.sqrt((rows - c_row) ** 2 + (cols - c_col) ** 2)
    return float((power * dist).sum() / (m * n))
