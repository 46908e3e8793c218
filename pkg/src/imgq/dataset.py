"""Listing manifests, popularity labels, splits, and synthetic corpora.

Manifests are JSON Lines, UTF-8, one record per line with fixed keys.
``image_path`` entries are interpreted relative to the manifest's directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyInput, InsufficientClassMembers
from .raster import RasterImage, gaussian_blur, save_png

_MANIFEST_KEYS = (
    "listing_id", "image_path", "title", "tags", "favorites", "clicks", "purchases",
)


@dataclass(frozen=True)
class ListingRecord:
    listing_id: int
    image_path: str
    title: str
    tags: list[str]
    favorites: int
    clicks: int
    purchases: int

    def __post_init__(self) -> None:
        for name in ("favorites", "clicks", "purchases"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class LabeledExample:
    listing_id: int
    popularity: int
    label: int


def popularity_score(record: ListingRecord) -> int:
    """favorites + clicks + purchases."""
    return record.favorites + record.clicks + record.purchases


def write_manifest(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            row = asdict(rec)
            fh.write(json.dumps({k: row[k] for k in _MANIFEST_KEYS}) + "\n")


def read_manifest(path) -> list[ListingRecord]:
    records = []
    seen = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{line_no}: invalid JSON: {exc}") from exc
            rec = ListingRecord(
                listing_id=int(row["listing_id"]),
                image_path=str(row["image_path"]),
                title=str(row["title"]),
                tags=[str(t) for t in row["tags"]],
                favorites=int(row["favorites"]),
                clicks=int(row["clicks"]),
                purchases=int(row["purchases"]),
            )
            if rec.listing_id in seen:
                raise ValueError(f"duplicate listing_id {rec.listing_id}")
            seen.add(rec.listing_id)
            records.append(rec)
    return records


def resolve_image_path(manifest_path, record: ListingRecord) -> Path:
    return Path(manifest_path).parent / record.image_path


def binarize(scores, policy: str = "median") -> np.ndarray:
    """Binary labels from popularity scores.

    ``median``: 1 iff score > median (strict, so all-equal scores go to 0);
    ``positive``: 1 iff score > 0.
    """
    scores = np.asarray(list(scores), dtype=np.float64)
    if scores.size == 0:
        raise EmptyInput("no scores to binarize")
    if policy == "median":
        return (scores > np.median(scores)).astype(np.int64)
    if policy == "positive":
        return (scores > 0).astype(np.int64)
    raise ValueError(f"unknown policy {policy!r}")


def split_indices(labels, test_fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic stratified split; returns sorted (train, test) indices.

    Every class present lands in both halves: test takes round(fraction * n_c)
    clamped to [1, n_c - 1] per class (a singleton class stays in train).
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    labels = np.asarray(labels)
    if labels.size == 0:
        raise EmptyInput("no labels to split")
    classes = np.unique(labels)
    if classes.size < 2:
        raise InsufficientClassMembers(
            f"stratified split needs both classes, got only {classes.tolist()}"
        )
    rng = np.random.default_rng(seed)
    train, test = [], []
    for cls in classes:
        idx = np.flatnonzero(labels == cls)
        perm = idx[rng.permutation(idx.size)]
        if idx.size < 2:
            train.extend(perm.tolist())
            continue
        n_test = int(np.clip(round(test_fraction * idx.size), 1, idx.size - 1))
        test.extend(perm[:n_test].tolist())
        train.extend(perm[n_test:].tolist())
    return np.sort(np.array(train, dtype=np.int64)), np.sort(np.array(test, dtype=np.int64))


def split(examples, test_fraction: float, seed: int):
    """Stratified split of examples carrying a ``label`` attribute."""
    examples = list(examples)
    labels = np.array([ex.label for ex in examples])
    train_idx, test_idx = split_indices(labels, test_fraction, seed)
    return [examples[i] for i in train_idx], [examples[i] for i in test_idx]


# ---------------------------------------------------------------------------
# Synthetic corpus
# ---------------------------------------------------------------------------

_NOUNS = (
    "mug", "bowl", "scarf", "ring", "necklace", "print", "poster", "candle",
    "pillow", "tote", "basket", "journal", "vase", "clock", "lamp", "soap",
    "blanket", "earrings", "planter", "coaster", "apron", "wallet", "belt",
)
_MODIFIERS = (
    "ceramic", "wooden", "linen", "copper", "walnut", "glazed", "woven",
    "stamped", "carved", "knitted", "dyed", "etched", "painted", "rustic",
    "minimal", "floral", "geometric", "striped",
)
_PREMIUM = ("handmade", "artisan", "heirloom")
_TAGS = ("gift", "home", "decor", "kitchen", "vintage", "boho", "modern",
         "custom", "eco", "natural")

_IMAGE_SIZE = 96
# Popularity logit weights over the two centered latents. Image quality is
# deliberately the stronger driver so models that can see the pixels have
# headroom over the text baseline.
_W_IMAGE = 5.0
_W_TEXT = 0.9


@dataclass(frozen=True)
class SynthResult:
    manifest_path: Path
    records: list
    latent_quality: np.ndarray
    latent_text: np.ndarray


def _hue_to_rgb(hue: float) -> np.ndarray:
    """Saturated RGB for a hue in [0, 360)."""
    k = hue / 60.0
    x = 1.0 - abs(k % 2.0 - 1.0)
    table = [(1, x, 0), (x, 1, 0), (0, 1, x), (0, x, 1), (x, 0, 1), (1, 0, x)]
    return np.array(table[int(k) % 6], dtype=np.float64)


def _render_listing_image(rng: np.random.Generator, blur_sigma: float,
                          thirds_offset: float, clutter: int) -> RasterImage:
    s = _IMAGE_SIZE
    base = rng.uniform(0.5, 0.75)
    tint = rng.uniform(-0.04, 0.04, size=3)
    canvas = np.clip(base + tint, 0.05, 0.95) * np.ones((s, s, 3))

    for _ in range(clutter):
        cw = int(rng.integers(4, 15))
        ch = int(rng.integers(4, 15))
        cy = int(rng.integers(0, s - ch))
        cx = int(rng.integers(0, s - cw))
        color = rng.uniform(0.0, 1.0, size=3)
        canvas[cy:cy + ch, cx:cx + cw] = color

    # subject disk anchored at a thirds point, displaced by thirds_offset
    corners = ((s / 3.0, s / 3.0), (s / 3.0, 2 * s / 3.0),
               (2 * s / 3.0, s / 3.0), (2 * s / 3.0, 2 * s / 3.0))
    anchor = corners[int(rng.integers(0, 4))]
    angle = rng.uniform(0.0, 2.0 * np.pi)
    shift = thirds_offset * 0.3 * s
    cy = anchor[0] + shift * np.sin(angle)
    cx = anchor[1] + shift * np.cos(angle)
    radius = s * rng.uniform(0.12, 0.18)
    color = 0.25 + 0.65 * _hue_to_rgb(float(rng.uniform(0.0, 360.0)))
    ys = np.arange(s)[:, None]
    xs = np.arange(s)[None, :]
    dist = np.sqrt((ys - cy) ** 2 + (xs - cx) ** 2)
    # one-pixel anti-aliased rim
    cover = np.clip(radius + 0.5 - dist, 0.0, 1.0)[..., None]
    canvas = canvas * (1.0 - cover) + color[None, None, :] * cover

    blurred = gaussian_blur(RasterImage(np.clip(canvas, 0.0, 1.0)), blur_sigma)
    quantized = np.clip(np.rint(blurred.data * 255.0), 0, 255) / 255.0
    return RasterImage(quantized)


def generate_synthetic(n: int, seed: int, out_dir) -> SynthResult:
    """Write an n-listing synthetic corpus and return its manifest path.

    Each listing draws an image latent (sharpness, thirds placement, low
    clutter) and a text latent (premium-token count); both feed the popularity
    logit, so image features carry signal that titles alone cannot explain.
    Identical (n, seed) yield byte-identical trees.
    """
    if n < 20:
        raise ValueError(f"synthetic corpus needs n >= 20, got {n}")
    out_dir = Path(out_dir)
    images_dir = out_dir / "images"
    os.makedirs(images_dir, exist_ok=True)
    rng = np.random.default_rng(seed)

    records = []
    latent_quality = np.empty(n)
    latent_text = np.empty(n)
    for i in range(n):
        blur_sigma = float(rng.uniform(0.4, 3.2))
        thirds_offset = float(rng.uniform(0.0, 1.0))
        clutter = int(rng.integers(0, 13))
        premium_k = int(rng.integers(0, 4))

        # sharpness weighted highest: it is the most recoverable cue
        z_img = (
            0.5 * (1.0 - (blur_sigma - 0.4) / 2.8)
            + 0.25 * (1.0 - thirds_offset)
            + 0.25 * (1.0 - clutter / 12.0)
        )
        z_txt = premium_k / 3.0
        logit = _W_IMAGE * (z_img - 0.5) + _W_TEXT * (z_txt - 0.5)
        p = 1.0 / (1.0 + np.exp(-logit))

        image = _render_listing_image(rng, blur_sigma, thirds_offset, clutter)
        rel_path = f"images/{i + 1:06d}.png"
        save_png(image, out_dir / rel_path)

        favorites = int(rng.binomial(40, 0.7 * p))
        clicks = int(rng.binomial(120, np.clip(p, 0.02, 0.98)))
        purchases = int(rng.binomial(12, 0.45 * p))

        n_words = int(rng.integers(3, 7))
        words = [str(w) for w in rng.choice(_NOUNS + _MODIFIERS, size=n_words)]
        words += [str(w) for w in rng.choice(_PREMIUM, size=premium_k, replace=False)]
        perm = rng.permutation(len(words))
        title = " ".join(words[j] for j in perm)
        n_tags = int(rng.integers(2, 5))
        tags = [str(t) for t in rng.choice(_TAGS, size=n_tags, replace=False)]

        records.append(ListingRecord(
            listing_id=i + 1,
            image_path=rel_path,
            title=title,
            tags=tags,
            favorites=favorites,
            clicks=clicks,
            purchases=purchases,
        ))
        latent_quality[i] = z_img
        latent_text[i] = z_txt

    manifest_path = out_dir / "manifest.jsonl"
    write_manifest(records, manifest_path)
    return SynthResult(
        manifest_path=manifest_path,
        records=records,
        latent_quality=latent_quality,
        latent_text=latent_text,
    )
