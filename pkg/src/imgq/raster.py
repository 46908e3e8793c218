"""Raster primitives: decoding, colorspaces, filtering, resizing, transforms.

All samples are float64. RGB, Gray and HSV-V/S live in [0, 1]; HSV hue is in
degrees [0, 360); Lab lightness is in [0, 100]. Every filter uses edge
replication at the borders, and every operation is a pure function of its
inputs so identical bytes always produce identical outputs.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage

from .errors import DecodeError, InvalidSigma, TooSmall, UnsupportedConversion

RGB = "RGB"
GRAY = "Gray"
HSV = "HSV"
LAB = "Lab"

_CHANNELS = {RGB: 3, GRAY: 1, HSV: 3, LAB: 3}

# Rec. 601 luma weights, applied to nonlinear sRGB samples.
_LUMA = np.array([0.299, 0.587, 0.114])

# sRGB -> XYZ (D65) matrix rows.
_SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_D65_WHITE = np.array([0.95047, 1.0, 1.08883])


@dataclass(frozen=True)
class RasterImage:
    """A decoded image plane stack with a declared colorspace.

    ``data`` has shape ``(height, width)`` for Gray and ``(height, width, 3)``
    otherwise.
    """

    data: np.ndarray
    colorspace: str = RGB

    def __post_init__(self) -> None:
        data = np.ascontiguousarray(np.asarray(self.data, dtype=np.float64))
        object.__setattr__(self, "data", data)
        if self.colorspace not in _CHANNELS:
            raise UnsupportedConversion(f"unknown colorspace {self.colorspace!r}")
        want = _CHANNELS[self.colorspace]
        if want == 1 and data.ndim != 2:
            raise ValueError("Gray data must be 2-D")
        if want == 3 and (data.ndim != 3 or data.shape[2] != 3):
            raise ValueError(f"{self.colorspace} data must be (h, w, 3)")
        if data.size == 0:
            raise ValueError("empty image")

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return 1 if self.data.ndim == 2 else self.data.shape[2]

    def validate(self) -> "RasterImage":
        """Check that every sample lies in its colorspace's declared range."""
        data = self.data
        if not np.all(np.isfinite(data)):
            raise ValueError("non-finite samples")
        if self.colorspace in (RGB, GRAY):
            lo, hi = data.min(), data.max()
            if lo < 0.0 or hi > 1.0:
                raise ValueError(f"{self.colorspace} samples outside [0, 1]")
        elif self.colorspace == HSV:
            h, s, v = data[..., 0], data[..., 1], data[..., 2]
            if h.min() < 0.0 or h.max() >= 360.0:
                raise ValueError("hue outside [0, 360)")
            for plane in (s, v):
                if plane.min() < 0.0 or plane.max() > 1.0:
                    raise ValueError("HSV S/V outside [0, 1]")
        else:
            lum = data[..., 0]
            if lum.min() < -1e-9 or lum.max() > 100.0 + 1e-9:
                raise ValueError("L outside [0, 100]")
        return self


@dataclass(frozen=True)
class Histogram:
    """Bin counts over a closed value range."""

    counts: np.ndarray
    lo: float
    hi: float

    def normalized(self) -> np.ndarray:
        total = float(self.counts.sum())
        if total <= 0.0:
            return np.zeros_like(np.asarray(self.counts, dtype=np.float64))
        return np.asarray(self.counts, dtype=np.float64) / total


@dataclass(frozen=True)
class WaveletLevel:
    """One DWT level: detail subbands plus the approximation that feeds deeper levels.

    ``hl`` is high-pass along x (responds to vertical edges), ``lh`` high-pass
    along y (horizontal edges), ``hh`` diagonal.
    """

    hl: np.ndarray
    lh: np.ndarray
    hh: np.ndarray
    approx: np.ndarray


@dataclass(frozen=True)
class Pyramid:
    """Multi-scale decomposition, finest level first.

    ``kind`` is ``"laplacian"`` (levels are band-pass planes, ``approx`` is the
    residual low-pass) or ``"wavelet"`` (levels are :class:`WaveletLevel`,
    ``approx`` is the coarsest LL plane).
    """

    kind: str
    levels: tuple
    approx: np.ndarray


def decode_image(buf: bytes) -> RasterImage:
    """Decode PNG or JPEG bytes to an RGB raster with samples in [0, 1]."""
    try:
        with Image.open(io.BytesIO(buf)) as im:
            arr = np.asarray(im.convert("RGB"), dtype=np.float64)
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise DecodeError(f"cannot decode image: {exc}") from exc
    if arr.size == 0:
        raise DecodeError("decoded image is empty")
    return RasterImage(arr / 255.0, RGB)


def load_image(path) -> RasterImage:
    with open(path, "rb") as fh:
        return decode_image(fh.read())


def encode_png(img: RasterImage | np.ndarray) -> bytes:
    """Encode an RGB raster or a [0, 1] plane as PNG bytes."""
    arr = img.data if isinstance(img, RasterImage) else np.asarray(img, dtype=np.float64)
    u8 = np.clip(np.rint(arr * 255.0), 0, 255).astype(np.uint8)
    mode = "L" if u8.ndim == 2 else "RGB"
    out = io.BytesIO()
    Image.fromarray(u8, mode=mode).save(out, format="PNG")
    return out.getvalue()


def save_png(img: RasterImage | np.ndarray, path) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_png(img))


def _srgb_linearize(s: np.ndarray) -> np.ndarray:
    return np.where(s <= 0.04045, s / 12.92, ((s + 0.055) / 1.055) ** 2.4)


def _lab_f(t: np.ndarray) -> np.ndarray:
    delta = 6.0 / 29.0
    return np.where(t > delta**3, np.cbrt(t), t / (3.0 * delta**2) + 4.0 / 29.0)


def _rgb_to_gray(data: np.ndarray) -> np.ndarray:
    return data @ _LUMA


def _rgb_to_hsv(data: np.ndarray) -> np.ndarray:
    r, g, b = data[..., 0], data[..., 1], data[..., 2]
    v = data.max(axis=-1)
    c = v - data.min(axis=-1)
    s = np.where(v > 0.0, c / np.where(v > 0.0, v, 1.0), 0.0)
    safe_c = np.where(c > 0.0, c, 1.0)
    h = np.zeros_like(v)
    sector = np.where(c > 0.0, np.argmax(data, axis=-1), -1)
    h = np.where(sector == 0, ((g - b) / safe_c) % 6.0, h)
    h = np.where(sector == 1, (b - r) / safe_c + 2.0, h)
    h = np.where(sector == 2, (r - g) / safe_c + 4.0, h)
    h = (h * 60.0) % 360.0
    h = np.where(c > 0.0, h, 0.0)
    return np.stack([h, s, v], axis=-1)


def _rgb_to_lab(data: np.ndarray) -> np.ndarray:
    lin = _srgb_linearize(data)
    xyz = lin @ _SRGB_TO_XYZ.T
    f = _lab_f(xyz / _D65_WHITE)
    lum = 116.0 * f[..., 1] - 16.0
    a = 500.0 * (f[..., 0] - f[..., 1])
    b = 200.0 * (f[..., 1] - f[..., 2])
    return np.stack([lum, a, b], axis=-1)


def convert_colorspace(img: RasterImage, target: str) -> RasterImage:
    """Convert an RGB raster to Gray, HSV or Lab (or copy it unchanged)."""
    if target not in _CHANNELS:
        raise UnsupportedConversion(f"unknown colorspace {target!r}")
    if img.colorspace != RGB:
        if target == img.colorspace:
            return RasterImage(img.data.copy(), img.colorspace)
        raise UnsupportedConversion(
            f"conversion {img.colorspace} -> {target} is not defined"
        )
    if target == RGB:
        return RasterImage(img.data.copy(), RGB)
    if target == GRAY:
        return RasterImage(_rgb_to_gray(img.data), GRAY)
    if target == HSV:
        return RasterImage(_rgb_to_hsv(img.data), HSV)
    return RasterImage(_rgb_to_lab(img.data), LAB)


def gray_plane(img: RasterImage) -> np.ndarray:
    """The luma plane of an RGB raster (or the data of a Gray one)."""
    if img.colorspace == GRAY:
        return img.data
    if img.colorspace != RGB:
        raise UnsupportedConversion(f"no gray plane for {img.colorspace}")
    return _rgb_to_gray(img.data)


def _as_plane(img) -> np.ndarray:
    if isinstance(img, RasterImage):
        return gray_plane(img)
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D plane")
    return arr


def laplacian_3x3(img: RasterImage | np.ndarray) -> np.ndarray:
    """8-connected Laplacian magnitude, averaged over channels.

    Kernel: center 8, ring of -1. Borders replicate edge samples, so constant
    images (and the interior of linear ramps) map to exactly zero.
    """
    data = img.data if isinstance(img, RasterImage) else np.asarray(img, dtype=np.float64)
    if data.ndim == 2:
        planes = [data]
    else:
        planes = [data[..., k] for k in range(data.shape[2])]
    out = np.zeros(data.shape[:2])
    for plane in planes:
        p = np.pad(plane, 1, mode="edge")
        ring = (
            p[:-2, :-2] + p[:-2, 1:-1] + p[:-2, 2:]
            + p[1:-1, :-2] + p[1:-1, 2:]
            + p[2:, :-2] + p[2:, 1:-1] + p[2:, 2:]
        )
        out += np.abs(8.0 * plane - ring)
    return out / len(planes)


def gaussian_kernel_1d(sigma: float) -> np.ndarray:
    """Unit-sum Gaussian taps with radius ceil(3*sigma)."""
    if not sigma > 0.0:
        raise InvalidSigma(f"sigma must be > 0, got {sigma}")
    radius = int(np.ceil(3.0 * sigma))
    xs = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(xs**2) / (2.0 * sigma * sigma))
    return k / k.sum()


def _blur_plane(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    out = ndimage.correlate1d(plane, kernel, axis=0, mode="nearest")
    return ndimage.correlate1d(out, kernel, axis=1, mode="nearest")


def gaussian_blur(img: RasterImage | np.ndarray, sigma: float):
    """Separable Gaussian blur with edge replication; preserves the input type."""
    kernel = gaussian_kernel_1d(sigma)
    if isinstance(img, RasterImage):
        data = img.data
        if data.ndim == 2:
            blurred = _blur_plane(data, kernel)
        else:
            blurred = np.stack(
                [_blur_plane(data[..., k], kernel) for k in range(data.shape[2])],
                axis=-1,
            )
        return RasterImage(blurred, img.colorspace)
    return _blur_plane(_as_plane(img), kernel)


def fft2_magnitude(img: RasterImage | np.ndarray) -> np.ndarray:
    """Magnitude of the unnormalized 2-D DFT of the gray plane (DC at [0, 0])."""
    return np.abs(np.fft.fft2(_as_plane(img)))


def _resize_plane(plane: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    in_h, in_w = plane.shape
    if (out_h, out_w) == (in_h, in_w):
        return plane.copy()
    # Half-pixel-center sampling; clamped indices give edge replication.
    ys = (np.arange(out_h) + 0.5) * (in_h / out_h) - 0.5
    xs = (np.arange(out_w) + 0.5) * (in_w / out_w) - 0.5
    y0 = np.floor(ys).astype(np.int64)
    x0 = np.floor(xs).astype(np.int64)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    # Clamp both neighbors from the unclipped floor so samples beyond the
    # border interpolate between two copies of the edge row/column.
    y1 = np.clip(y0 + 1, 0, in_h - 1)
    x1 = np.clip(x0 + 1, 0, in_w - 1)
    y0 = np.clip(y0, 0, in_h - 1)
    x0 = np.clip(x0, 0, in_w - 1)
    tl = plane[np.ix_(y0, x0)]
    tr = plane[np.ix_(y0, x1)]
    bl = plane[np.ix_(y1, x0)]
    br = plane[np.ix_(y1, x1)]
    top = tl + (tr - tl) * fx
    bot = bl + (br - bl) * fx
    return top + (bot - top) * fy


def resize(img: RasterImage | np.ndarray, width: int, height: int):
    """Bilinear resize; an identity resize returns the input bit-exactly."""
    if width < 1 or height < 1:
        raise ValueError("target size must be positive")
    if isinstance(img, RasterImage):
        data = img.data
        if data.ndim == 2:
            out = _resize_plane(data, height, width)
        else:
            out = np.stack(
                [_resize_plane(data[..., k], height, width) for k in range(data.shape[2])],
                axis=-1,
            )
        return RasterImage(out, img.colorspace)
    return _resize_plane(_as_plane(img), height, width)


# ---------------------------------------------------------------------------
# Pyramids
# ---------------------------------------------------------------------------

_BINOMIAL5 = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0


def _binomial_smooth(plane: np.ndarray) -> np.ndarray:
    out = ndimage.correlate1d(plane, _BINOMIAL5, axis=0, mode="nearest")
    return ndimage.correlate1d(out, _BINOMIAL5, axis=1, mode="nearest")


def _pyr_down(plane: np.ndarray) -> np.ndarray:
    # ceil-halving: [::2] keeps (n + 1) // 2 samples
    return _binomial_smooth(plane)[::2, ::2]


def build_laplacian_pyramid(img: RasterImage | np.ndarray, levels: int) -> Pyramid:
    """Burt-Adelson band-pass stack: 5x5 binomial smooth, halve, diff on upsample.

    ``levels`` counts the band-pass planes; the residual low-pass is stored as
    ``approx``. Collapsing (upsample + add, coarse to fine) reconstructs the
    input exactly.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    plane = _as_plane(img)
    if min(plane.shape) < 2**levels:
        raise TooSmall(
            f"image extent {plane.shape} too small for {levels} pyramid levels"
        )
    details = []
    current = plane
    for _ in range(levels):
        down = _pyr_down(current)
        up = _resize_plane(down, current.shape[0], current.shape[1])
        details.append(current - up)
        current = down
    return Pyramid(kind="laplacian", levels=tuple(details), approx=current)


def collapse_laplacian_pyramid(pyr: Pyramid) -> np.ndarray:
    """Invert :func:`build_laplacian_pyramid` exactly."""
    if pyr.kind != "laplacian":
        raise ValueError("expected a laplacian pyramid")
    current = pyr.approx
    for detail in reversed(pyr.levels):
        current = detail + _resize_plane(current, detail.shape[0], detail.shape[1])
    return current


def haar_dwt2(plane: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """One orthonormal 2-D Haar step on an even-sized plane: (ll, hl, lh, hh)."""
    h, w = plane.shape
    if h % 2 or w % 2:
        raise ValueError("haar_dwt2 requires even dimensions")
    p00 = plane[0::2, 0::2]
    p01 = plane[0::2, 1::2]
    p10 = plane[1::2, 0::2]
    p11 = plane[1::2, 1::2]
    ll = (p00 + p01 + p10 + p11) / 2.0
    hl = (p00 - p01 + p10 - p11) / 2.0
    lh = (p00 + p01 - p10 - p11) / 2.0
    hh = (p00 - p01 - p10 + p11) / 2.0
    return ll, hl, lh, hh


def haar_idwt2(
    ll: np.ndarray, hl: np.ndarray, lh: np.ndarray, hh: np.ndarray
) -> np.ndarray:
    """Exact inverse of :func:`haar_dwt2`."""
    h, w = ll.shape
    out = np.empty((2 * h, 2 * w))
    out[0::2, 0::2] = (ll + hl + lh + hh) / 2.0
    out[0::2, 1::2] = (ll - hl + lh - hh) / 2.0
    out[1::2, 0::2] = (ll + hl - lh - hh) / 2.0
    out[1::2, 1::2] = (ll - hl - lh + hh) / 2.0
    return out


def _pad_even(plane: np.ndarray) -> np.ndarray:
    h, w = plane.shape
    if h % 2 == 0 and w % 2 == 0:
        return plane
    return np.pad(plane, ((0, h % 2), (0, w % 2)), mode="edge")


def build_wavelet_pyramid(img: RasterImage | np.ndarray, levels: int) -> Pyramid:
    """Multi-level Haar DWT, finest level first; odd sizes edge-pad to even."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    plane = _as_plane(img)
    if min(plane.shape) < 2**levels:
        raise TooSmall(
            f"image extent {plane.shape} too small for {levels} DWT levels"
        )
    out = []
    current = plane
    for _ in range(levels):
        ll, hl, lh, hh = haar_dwt2(_pad_even(current))
        out.append(WaveletLevel(hl=hl, lh=lh, hh=hh, approx=ll))
        current = ll
    return Pyramid(kind="wavelet", levels=tuple(out), approx=current)


def histogram256(values: np.ndarray) -> Histogram:
    """256-bin histogram of [0, 1] samples quantized by round(v * 255)."""
    levels = np.clip(np.rint(np.asarray(values, dtype=np.float64) * 255.0), 0, 255)
    counts = np.bincount(levels.astype(np.int64).ravel(), minlength=256)
    return Histogram(counts=counts.astype(np.float64), lo=0.0, hi=255.0)
