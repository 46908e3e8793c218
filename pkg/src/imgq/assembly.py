"""Assemble the named 5158-dimensional quality vector and serialize batches.

The schema below is the single source of truth for feature names, order and
block widths; extraction writes every block through it and asserts the layout
is gapless. Binary feature files carry (magic, schema version, count, dim)
followed by ``listing_id`` + values per record, all little-endian.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field, fields

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import blur, composition, simplicity, texture
from .errors import ImageTooSmall, SchemaMismatch
from .raster import RasterImage
from .validation import as_raster, require_rgb

SCHEMA_VERSION = 1
QUALITY_DIM = 5158
MIN_EXTENT = 32

_MAGIC = b"IMGQ"
_HEADER = struct.Struct("<4sIII")

_LAYOUT = (
    ("Ke06-qa", 1),
    ("Ke06-qh", 1),
    ("Ke06-qf", 1),
    ("Ke06-tong", 1),
    ("Ke06-qct", 1),
    ("Ke06-qb", 1),
    ("mser-count", 1),
    ("Mai11-thirds map", 25),
    ("Wang15-f1", 1),
    ("Wang15-f14", 1),
    ("Wang15-f18", 1),
    ("Wang15-f21", 1),
    ("Wang15-f22", 1),
    ("Wang15-f26", 1),
    ("Khosla14-texture", 5120),
)


@dataclass(frozen=True)
class SchemaEntry:
    name: str
    offset: int
    length: int


def schema() -> tuple[SchemaEntry, ...]:
    """The ordered feature layout: 15 named blocks covering [0, 5158)."""
    entries = []
    offset = 0
    for name, length in _LAYOUT:
        entries.append(SchemaEntry(name=name, offset=offset, length=length))
        offset += length
    assert offset == QUALITY_DIM
    return tuple(entries)


_SCHEMA = schema()
_BY_NAME = {e.name: e for e in _SCHEMA}


def feature_slice(name: str) -> slice:
    entry = _BY_NAME[name]
    return slice(entry.offset, entry.offset + entry.length)


@dataclass(frozen=True)
class ExtractorConfig:
    """Tunable extractor parameters; defaults match the feature definitions."""

    hue_alpha: float = 0.05
    blur_theta: float | None = None
    blur_theta_scale: float = blur.THETA_SCALE
    edge_threshold: float = blur.EDGE_THRESHOLD
    saliency_eps: float = composition.SALIENCY_EPS
    mser_delta: int = 5
    mser_min_area_frac: float = 1e-4
    mser_max_area_frac: float = 0.25
    mser_max_variation: float = 0.25
    mser_min_diversity: float = 0.2
    strict: bool = False


def extract_quality(
    img, config: ExtractorConfig | None = None
) -> np.ndarray:
    """Extract the full quality vector from an image, shape (5158,).

    Accepts a raster, raw bytes, a path or a [0, 1] array. Images smaller
    than 32x32 on a side raise :class:`ImageTooSmall`.
    """
    cfg = config or ExtractorConfig()
    raster = as_raster(img)
    require_rgb(raster, "extract_quality")
    if min(raster.height, raster.width) < MIN_EXTENT:
        raise ImageTooSmall(
            f"extraction needs at least {MIN_EXTENT}x{MIN_EXTENT} pixels, "
            f"got {raster.height}x{raster.width}"
        )

    avg_lightness = simplicity.brightness(raster)
    saliency = composition.spectral_residual_saliency(raster, eps=cfg.saliency_eps)

    out = np.full(QUALITY_DIM, np.nan)
    blocks = {
        "Ke06-qa": simplicity.spatial_edge_distribution(raster, strict=cfg.strict),
        "Ke06-qh": simplicity.hue_count(raster, alpha=cfg.hue_alpha),
        "Ke06-qf": blur.blur_frequency(
            raster, theta=cfg.blur_theta, theta_scale=cfg.blur_theta_scale
        ),
        "Ke06-tong": blur.blur_edge_structure(raster, threshold=cfg.edge_threshold),
        "Ke06-qct": simplicity.contrast(raster),
        "Ke06-qb": avg_lightness,
        "mser-count": float(
            composition.mser_count(
                raster,
                delta=cfg.mser_delta,
                min_area_frac=cfg.mser_min_area_frac,
                max_area_frac=cfg.mser_max_area_frac,
                max_variation=cfg.mser_max_variation,
                min_diversity=cfg.mser_min_diversity,
            )
        ),
        "Mai11-thirds map": composition.thirds_map(saliency),
        "Wang15-f1": avg_lightness,
        "Wang15-f14": texture.wavelet_smoothness(raster),
        "Wang15-f18": texture.laplacian_smoothness(raster),
        "Wang15-f21": texture.dof_wavelet(raster),
        "Wang15-f22": texture.dof_laplacian(raster),
        "Wang15-f26": texture.dof_spatial_spread(raster),
        "Khosla14-texture": texture.lbp_pyramid(raster),
    }
    covered = 0
    for entry in _SCHEMA:
        out[entry.offset:entry.offset + entry.length] = blocks[entry.name]
        covered += entry.length
    assert covered == QUALITY_DIM and not np.isnan(out).any()
    return out


def write_vectors(records, path) -> None:
    """Write (listing_id, vector) pairs; ids must be unique, vectors (5158,)."""
    records = list(records)
    ids = [int(lid) for lid, _ in records]
    if len(set(ids)) != len(ids):
        raise ValueError("listing ids must be unique")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, SCHEMA_VERSION, len(records), QUALITY_DIM))
        for lid, vec in records:
            vec = np.asarray(vec, dtype="<f8")
            if vec.shape != (QUALITY_DIM,):
                raise ValueError(f"vector shape {vec.shape} != ({QUALITY_DIM},)")
            fh.write(struct.pack("<Q", int(lid)))
            fh.write(vec.tobytes())


def read_vectors(path) -> list[tuple[int, np.ndarray]]:
    """Read a feature file written by :func:`write_vectors`."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise SchemaMismatch("truncated header")
        magic, version, count, dim = _HEADER.unpack(header)
        if magic != _MAGIC:
            raise SchemaMismatch(f"bad magic {magic!r}")
        if version != SCHEMA_VERSION:
            raise SchemaMismatch(f"schema version {version} != {SCHEMA_VERSION}")
        if dim != QUALITY_DIM:
            raise SchemaMismatch(f"dimension {dim} != {QUALITY_DIM}")
        record = np.dtype([("id", "<u8"), ("values", "<f8", (QUALITY_DIM,))])
        body = np.fromfile(fh, dtype=record, count=count)
    if body.shape[0] != count:
        raise SchemaMismatch(f"expected {count} records, file holds {body.shape[0]}")
    return [(int(row["id"]), np.array(row["values"])) for row in body]


def write_vectors_csv(records, path) -> None:
    """Debug export: one row per record, header from the expanded schema."""
    names = []
    for entry in _SCHEMA:
        if entry.length == 1:
            names.append(entry.name)
        else:
            names.extend(f"{entry.name}[{k}]" for k in range(entry.length))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("listing_id," + ",".join(names) + "\n")
        for lid, vec in records:
            vals = ",".join(repr(float(v)) for v in np.asarray(vec))
            fh.write(f"{int(lid)},{vals}\n")


class QualityFeatureExtractor(BaseEstimator, TransformerMixin):
    """Stateless transformer mapping images to (n, 5158) quality matrices.

    Parameters mirror :class:`ExtractorConfig`; inputs may be rasters, paths,
    bytes or [0, 1] arrays.
    """

    def __init__(
        self,
        hue_alpha: float = 0.05,
        blur_theta: float | None = None,
        blur_theta_scale: float = blur.THETA_SCALE,
        edge_threshold: float = blur.EDGE_THRESHOLD,
        saliency_eps: float = composition.SALIENCY_EPS,
        mser_delta: int = 5,
        mser_min_area_frac: float = 1e-4,
        mser_max_area_frac: float = 0.25,
        mser_max_variation: float = 0.25,
        mser_min_diversity: float = 0.2,
        strict: bool = False,
    ):
        self.hue_alpha = hue_alpha
        self.blur_theta = blur_theta
        self.blur_theta_scale = blur_theta_scale
        self.edge_threshold = edge_threshold
        self.saliency_eps = saliency_eps
        self.mser_delta = mser_delta
        self.mser_min_area_frac = mser_min_area_frac
        self.mser_max_area_frac = mser_max_area_frac
        self.mser_max_variation = mser_max_variation
        self.mser_min_diversity = mser_min_diversity
        self.strict = strict

    def _config(self) -> ExtractorConfig:
        return ExtractorConfig(
            **{f.name: getattr(self, f.name) for f in fields(ExtractorConfig)}
        )

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        cfg = self._config()
        rows = [extract_quality(x, cfg) for x in X]
        if not rows:
            return np.empty((0, QUALITY_DIM))
        return np.vstack(rows)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        names = []
        for entry in _SCHEMA:
            if entry.length == 1:
                names.append(entry.name)
            else:
                names.extend(f"{entry.name}[{k}]" for k in range(entry.length))
        return np.asarray(names, dtype=object)
