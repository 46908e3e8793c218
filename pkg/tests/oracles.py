"""Slow reference implementations the fast code is checked against.

Everything here is written directly from the defining formulas: explicit
loops, per-level flood fills, O(n^2) pair scans. Nothing imports from the
package under test.
"""

import numpy as np
from scipy import ndimage

FOUR_CONN = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])


def naive_dft2(plane):
    """Direct O(n^4) 2-D DFT."""
    plane = np.asarray(plane, dtype=np.complex128)
    h, w = plane.shape
    out = np.zeros((h, w), dtype=np.complex128)
    for u in range(h):
        for v in range(w):
            acc = 0.0j
            for y in range(h):
                for x in range(w):
                    acc += plane[y, x] * np.exp(-2j * np.pi * (u * y / h + v * x / w))
            out[u, v] = acc
    return out


def haar_blocks_naive(plane):
    """Orthonormal 2x2-block Haar: (ll, hl, lh, hh), each half-size."""
    plane = np.asarray(plane, dtype=np.float64)
    h, w = plane.shape
    assert h % 2 == 0 and w % 2 == 0
    ll = np.zeros((h // 2, w // 2))
    hl = np.zeros_like(ll)
    lh = np.zeros_like(ll)
    hh = np.zeros_like(ll)
    for i in range(h // 2):
        for j in range(w // 2):
            a = plane[2 * i, 2 * j]
            b = plane[2 * i, 2 * j + 1]
            c = plane[2 * i + 1, 2 * j]
            d = plane[2 * i + 1, 2 * j + 1]
            ll[i, j] = (a + b + c + d) / 2.0
            hl[i, j] = (a - b + c - d) / 2.0
            lh[i, j] = (a + b - c - d) / 2.0
            hh[i, j] = (a - b - c + d) / 2.0
    return ll, hl, lh, hh


# neighbor order: east, then counter-clockwise
_LBP_STEPS = ((0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1))


def lbp_naive(plane):
    """Double-loop 8-neighbor LBP codes of the interior pixels."""
    plane = np.asarray(plane, dtype=np.float64)
    h, w = plane.shape
    out = np.zeros((h - 2, w - 2), dtype=np.uint8)
    for y in range(1, h - 1):
        for x in range(1, w - 1):
            code = 0
            for bit, (dy, dx) in enumerate(_LBP_STEPS):
                if plane[y + dy, x + dx] >= plane[y, x]:
                    code |= 1 << bit
            out[y - 1, x - 1] = code
    return out


def lbp_pyramid_naive(plane):
    """Per-cell LBP histograms over 2x2 then 4x4 grids, one pixel at a time."""
    codes = lbp_naive(plane)
    h, w = codes.shape
    blocks = []
    for parts in (2, 4):
        row_bounds = [int(np.floor(h * k / parts + 0.5)) for k in range(parts + 1)]
        col_bounds = [int(np.floor(w * k / parts + 0.5)) for k in range(parts + 1)]
        for i in range(parts):
            for j in range(parts):
                hist = np.zeros(256)
                count = 0
                for y in range(row_bounds[i], row_bounds[i + 1]):
                    for x in range(col_bounds[j], col_bounds[j + 1]):
                        hist[codes[y, x]] += 1.0
                        count += 1
                blocks.append(hist / count if count else hist)
    return np.concatenate(blocks)


def auc_pairwise(scores, labels):
    """O(n^2) Mann-Whitney AUC; ties between classes count one half."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    pos = scores[labels == 1]
    neg = scores[labels == 0]
    wins = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1.0
            elif p == q:
                wins += 0.5
    return wins / (pos.size * neg.size)


def min_window_exhaustive(masses, fraction=0.98):
    """Smallest window width reaching fraction * total, by trying all windows."""
    masses = np.asarray(masses, dtype=np.float64)
    total = masses.sum()
    n = masses.size
    if total <= 0.0:
        return 1
    target = fraction * total - 1e-12 * total
    for width in range(1, n + 1):
        for start in range(0, n - width + 1):
            if masses[start:start + width].sum() >= target:
                return width
    return n


def lab_lightness_ref(rgb):
    """CIE L from sRGB via per-pixel scalar arithmetic (D65, 2-degree)."""
    rgb = np.asarray(rgb, dtype=np.float64)
    h, w, _ = rgb.shape
    out = np.zeros((h, w))
    for y in range(h):
        for x in range(w):
            lin = []
            for k in range(3):
                s = rgb[y, x, k]
                lin.append(s / 12.92 if s <= 0.04045 else ((s + 0.055) / 1.055) ** 2.4)
            Y = 0.2126729 * lin[0] + 0.7151522 * lin[1] + 0.0721750 * lin[2]
            if Y > (6.0 / 29.0) ** 3:
                f = Y ** (1.0 / 3.0)
            else:
                f = Y / (3.0 * (6.0 / 29.0) ** 2) + 4.0 / 29.0
            out[y, x] = 116.0 * f - 16.0
    return out


def _binomial5_ref(plane):
    """Separable [1,4,6,4,1]/16 smoothing with edge replication."""
    k = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0
    padded = np.pad(plane, 2, mode="edge")
    rows = sum(k[i] * padded[i:i + plane.shape[0], 2:-2] for i in range(5))
    padded = np.pad(rows, ((0, 0), (2, 2)), mode="edge")
    return sum(k[i] * padded[:, i:i + plane.shape[1]] for i in range(5))


def _bilinear_ref(plane, out_h, out_w):
    """Half-pixel-center bilinear resize with edge replication."""
    in_h, in_w = plane.shape
    out = np.zeros((out_h, out_w))
    for oy in range(out_h):
        sy = (oy + 0.5) * in_h / out_h - 0.5
        y0 = int(np.floor(sy))
        fy = sy - y0
        ya = min(max(y0, 0), in_h - 1)
        yb = min(max(y0 + 1, 0), in_h - 1)
        for ox in range(out_w):
            sx = (ox + 0.5) * in_w / out_w - 0.5
            x0 = int(np.floor(sx))
            fx = sx - x0
            xa = min(max(x0, 0), in_w - 1)
            xb = min(max(x0 + 1, 0), in_w - 1)
            top = plane[ya, xa] * (1 - fx) + plane[ya, xb] * fx
            bot = plane[yb, xa] * (1 - fx) + plane[yb, xb] * fx
            out[oy, ox] = top * (1 - fy) + bot * fy
    return out


def laplacian_finest_ref(plane):
    """Finest Laplacian-pyramid detail: plane minus upsampled decimation."""
    plane = np.asarray(plane, dtype=np.float64)
    down = _binomial5_ref(plane)[::2, ::2]
    return plane - _bilinear_ref(down, plane.shape[0], plane.shape[1])


def center_ratio_ref(power):
    """Center-4-cells share of a 4x4 grid over a power plane."""
    power = np.asarray(power, dtype=np.float64)
    h, w = power.shape
    rb = [int(np.floor(h * k / 4 + 0.5)) for k in range(5)]
    cb = [int(np.floor(w * k / 4 + 0.5)) for k in range(5)]
    total = power.sum()
    if total <= 0:
        return 0.0
    center = power[rb[1]:rb[3], cb[1]:cb[3]].sum()
    return center / total


def dof_laplacian_ref(rgb):
    """Independent route to the center-share of finest Laplacian power."""
    light = lab_lightness_ref(rgb)
    return center_ratio_ref(laplacian_finest_ref(light) ** 2)


def _mser_one_polarity_ref(gray, delta, min_area, max_area, max_variation,
                           min_diversity):
    """Count stable regions by labeling every threshold snapshot.

    A node is a component of ``gray <= g`` holding at least one pixel of value
    exactly g (the set changed at g). Stability compares against the component
    containing it delta levels up; the nearest candidate ancestor gates the
    diversity suppression.
    """
    gray = np.asarray(gray)
    labels = []
    counts = []
    for g in range(256):
        lab, _ = ndimage.label(gray <= g, structure=FOUR_CONN)
        labels.append(lab)
        counts.append(np.bincount(lab.ravel()))
    nodes = {}  # (g, comp_id) -> (size, rep_y, rep_x, is_candidate)
    for g in np.unique(gray):
        lab = labels[g]
        for comp in np.unique(lab[gray == g]):
            size = int(counts[g][comp])
            ys, xs = np.nonzero(lab == comp)
            up = min(int(g) + delta, 255)
            comp_up = labels[up][ys[0], xs[0]]
            grown = int(counts[up][comp_up])
            var = (grown - size) / size
            cand = min_area <= size <= max_area and var <= max_variation
            nodes[(int(g), int(comp))] = (size, ys[0], xs[0], cand)
    kept = 0
    for (g, comp), (size, ry, rx, cand) in nodes.items():
        if not cand:
            continue
        suppressed = False
        for g2 in range(g + 1, 256):
            comp2 = labels[g2][ry, rx]
            key = (g2, int(comp2))
            if key in nodes:
                anc_size, _, _, anc_cand = nodes[key]
                if anc_cand:
                    if (anc_size - size) <= min_diversity * anc_size:
                        suppressed = True
                    break
        if not suppressed:
            kept += 1
    return kept


def mser_count_ref(gray, delta, min_area, max_area, max_variation, min_diversity):
    """Both-polarity stable-region count on a uint8 plane."""
    dark = _mser_one_polarity_ref(
        gray, delta, min_area, max_area, max_variation, min_diversity)
    bright = _mser_one_polarity_ref(
        255 - gray, delta, min_area, max_area, max_variation, min_diversity)
    return dark + bright
