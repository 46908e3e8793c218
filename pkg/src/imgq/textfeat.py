"""Hashed text features from listing titles and tags.

Feature strings are namespaced (T1: title unigrams, T2: title bigrams,
G1: tag unigrams), hashed with a fixed 64-bit digest into 2^18 buckets and
counted; colliding features sum. No fitted vocabulary is involved, so the
mapping is stable across runs and platforms.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from sklearn.base import BaseEstimator, TransformerMixin

from .assembly import QUALITY_DIM

TEXT_DIM = 2**18
MM_DIM = QUALITY_DIM + TEXT_DIM

# Alphanumeric runs (Unicode-aware), underscore excluded.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase tokens split on any non-alphanumeric run.

    >>> tokenize("Hand-Made Mug!")
    ['hand', 'made', 'mug']
    """
    return _TOKEN_RE.findall(text.lower())


def stable_token_hash(feature: str) -> int:
    """Platform-independent 64-bit hash of a feature string."""
    digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def hash_index(feature: str) -> int:
    return stable_token_hash(feature) % TEXT_DIM


@dataclass(frozen=True)
class SparseVector:
    """Sorted sparse vector: strictly increasing unique indices below dim."""

    dim: int
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.int64)
        val = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)
        if idx.shape != val.shape or idx.ndim != 1:
            raise ValueError("indices/values must be matching 1-D arrays")
        if idx.size:
            if idx[0] < 0 or idx[-1] >= self.dim:
                raise ValueError("index out of range")
            if np.any(np.diff(idx) <= 0):
                raise ValueError("indices must be strictly increasing")
        if not np.all(np.isfinite(val)):
            raise ValueError("values must be finite")

    @classmethod
    def from_counts(cls, dim: int, counts: dict[int, float]) -> "SparseVector":
        indices = np.array(sorted(counts), dtype=np.int64)
        values = np.array([counts[i] for i in indices], dtype=np.float64)
        return cls(dim=dim, indices=indices, values=values)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out


def text_features(title: str, tags: list[str]) -> list[str]:
    """The namespaced feature strings of a listing, before hashing."""
    unigrams = tokenize(title)
    feats = [f"T1:{u}" for u in unigrams]
    feats += [f"T2:{a}_{b}" for a, b in zip(unigrams, unigrams[1:])]
    for tag in tags:
        feats += [f"G1:{u}" for u in tokenize(tag)]
    return feats


def text_vector(title: str, tags: list[str]) -> SparseVector:
    """Hashed counts of title unigrams/bigrams and tag unigrams, dim 2^18."""
    counts: Counter[int] = Counter()
    for feat in text_features(title, tags):
        counts[hash_index(feat)] += 1.0
    return SparseVector.from_counts(TEXT_DIM, counts)


def concat_mm(quality: np.ndarray, text: SparseVector) -> SparseVector:
    """Concatenate a quality vector and a text vector: quality block first."""
    quality = np.asarray(quality, dtype=np.float64)
    if quality.shape != (QUALITY_DIM,):
        raise ValueError(f"quality vector shape {quality.shape} != ({QUALITY_DIM},)")
    if text.dim != TEXT_DIM:
        raise ValueError(f"text vector dim {text.dim} != {TEXT_DIM}")
    indices = np.concatenate([np.arange(QUALITY_DIM), text.indices + QUALITY_DIM])
    values = np.concatenate([quality, text.values])
    return SparseVector(dim=MM_DIM, indices=indices, values=values)


class TextFeatureHasher(BaseEstimator, TransformerMixin):
    """Stateless transformer: (title, tags) pairs to a CSR matrix (n, 2^18)."""

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> sparse.csr_matrix:
        data, indices, indptr = [], [], [0]
        for item in X:
            title, tags = self._fields(item)
            vec = text_vector(title, list(tags))
            indices.extend(vec.indices.tolist())
            data.extend(vec.values.tolist())
            indptr.append(len(indices))
        return sparse.csr_matrix(
            (np.asarray(data), np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
            shape=(len(indptr) - 1, TEXT_DIM),
        )

    @staticmethod
    def _fields(item) -> tuple[str, list]:
        if hasattr(item, "title") and hasattr(item, "tags"):
            return item.title, item.tags
        if isinstance(item, dict):
            return item.get("title", ""), item.get("tags", [])
        title, tags = item
        return title, tags
