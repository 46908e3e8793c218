"""Shared fixtures: deterministic test images and a small synthetic corpus."""

import numpy as np
import pytest

from imgq import generate_synthetic


def rgb_noise(seed, h=64, w=64):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 1.0, (h, w, 3))


def checker_pattern(seed, mask=None, size=64):
    """Random-phase 2x2 checkerboard; detail power is uniform per block.

    Each 2x2 block holds one diagonal pair of ones, phase drawn per block, so
    the orthonormal Haar HH coefficient is +-1 everywhere and HL = LH = 0.
    ``mask`` (per-pixel, 0/1) optionally confines the pattern.
    """
    rng = np.random.default_rng(seed)
    phase = rng.integers(0, 2, (size // 2, size // 2))
    blocks = np.zeros((size // 2, size // 2, 2, 2))
    blocks[..., 0, 0] = phase
    blocks[..., 1, 1] = phase
    blocks[..., 0, 1] = 1 - phase
    blocks[..., 1, 0] = 1 - phase
    plane = blocks.transpose(0, 2, 1, 3).reshape(size, size)
    if mask is not None:
        plane = plane * mask
    return np.repeat(plane[..., None], 3, axis=2).astype(np.float64)


def bar_grid_image(seed, size=256, win=16):
    """One isolated 12x10 bar per pooled 16x16 window, contrast U(0.10, 0.96).

    Every window classifies as a gradual edge at any blur level, and the
    per-window contrast decides the sigma at which it loses sharpness, so the
    blur features respond to Gaussian blur without class churn.
    """
    rng = np.random.default_rng(seed)
    img = np.full((size, size, 3), 0.02)
    for gy in range(size // win):
        for gx in range(size // win):
            y = gy * win + 2
            x = gx * win + 3
            c = rng.uniform(0.10, 0.96)
            img[y:y + 12, x:x + 10] = 0.02 + c
    return np.clip(img, 0.0, 1.0)


def disk_image(cy, cx, radius, size=64, fg=0.0, bg=1.0):
    """Hard-edged disk; useful for region counting and saliency checks."""
    ys = np.arange(size)[:, None]
    xs = np.arange(size)[None, :]
    mask = (ys - cy) ** 2 + (xs - cx) ** 2 <= radius ** 2
    plane = np.where(mask, fg, bg)
    return np.repeat(plane[..., None], 3, axis=2).astype(np.float64)


@pytest.fixture(scope="session")
def small_corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    return generate_synthetic(40, 11, out)


@pytest.fixture(scope="session", autouse=True)
def warm_numba():
    # compile (or load the disk cache of) the region detector up front so
    # timing-sensitive tests never pay the first-call cost
    from imgq import mser_count

    mser_count(np.zeros((8, 8, 3)))
