"""Saliency map, thirds grid and stable-region count."""

import numpy as np
import pytest

from imgq import TooSmall, mser_count, spectral_residual_saliency, thirds_map
from imgq.composition import thirds_boundaries

from .conftest import disk_image, rgb_noise
from .oracles import mser_count_ref


def test_saliency_constant_is_zero():
    sal = spectral_residual_saliency(np.full((48, 48, 3), 0.7))
    assert sal.shape == (48, 48)
    assert np.all(sal == 0.0)


def test_saliency_range_and_shape():
    img = rgb_noise(1, 50, 70)
    sal = spectral_residual_saliency(img)
    assert sal.shape == (50, 70)
    assert sal.min() >= 0.0
    assert sal.max() == pytest.approx(1.0)


def test_saliency_concentrates_on_odd_region():
    img = np.full((96, 96, 3), 0.25)
    img[40:56, 60:76] = 0.9
    sal = spectral_residual_saliency(img)
    box = np.zeros((96, 96), dtype=bool)
    box[30:66, 50:86] = True
    assert sal[box].mean() > 1.5 * sal[~box].mean()


def test_saliency_deterministic():
    img = rgb_noise(2, 64, 64)
    assert np.array_equal(spectral_residual_saliency(img), spectral_residual_saliency(img))


def test_saliency_accepts_gray_plane():
    img = rgb_noise(3, 40, 40)
    assert spectral_residual_saliency(img[..., 0]).shape == (40, 40)


def test_thirds_boundaries_120():
    assert thirds_boundaries(120).tolist() == [0, 30, 50, 70, 90, 120]


def test_thirds_boundaries_partition():
    for extent in range(5, 200, 7):
        b = thirds_boundaries(extent)
        assert b[0] == 0 and b[-1] == extent
        assert np.all(np.diff(b) >= 0)


def test_thirds_map_uniform():
    cells = thirds_map(np.full((60, 60), 0.4))
    assert cells.shape == (25,)
    np.testing.assert_allclose(cells, 0.4)


def test_thirds_map_center_cell():
    sal = np.zeros((120, 120))
    sal[50:70, 50:70] = 1.0  # exactly the middle band both axes
    cells = thirds_map(sal)
    assert cells[12] == pytest.approx(1.0)
    assert cells.sum() == pytest.approx(1.0)


def test_thirds_map_rejects_tiny_input():
    with pytest.raises(TooSmall):
        thirds_map(np.zeros((4, 9)))
    with pytest.raises(ValueError):
        thirds_map(np.zeros((9, 9, 3)))


def test_mser_solid_disk():
    assert mser_count(disk_image(32, 32, 10)) == 1


def test_mser_two_disks():
    img = disk_image(20, 20, 8)
    yy, xx = np.mgrid[0:64, 0:64]
    img = np.where((((yy - 44) ** 2 + (xx - 44) ** 2) <= 64)[..., None], 0.0, img)
    assert mser_count(img) == 2


def test_mser_constant():
    assert mser_count(np.full((64, 64, 3), 0.5)) == 0


def test_mser_bright_disk_counts_via_inversion():
    assert mser_count(disk_image(32, 32, 10, fg=1.0, bg=0.0)) == 1


def test_mser_stable_under_quantization_jitter():
    base = disk_image(32, 32, 10)
    for seed in range(3):
        rng = np.random.default_rng(seed)
        noisy = np.clip(base + rng.integers(-1, 2, base.shape) / 255.0, 0.0, 1.0)
        assert mser_count(noisy) == 1


def test_mser_max_area_excludes_huge_regions():
    # disk covering well over a quarter of the frame
    assert mser_count(disk_image(32, 32, 28)) == 0


def test_mser_matches_reference():
    rng = np.random.default_rng(4)
    for _ in range(40):
        h, w = int(rng.integers(12, 25)), int(rng.integers(12, 25))
        lv = int(rng.integers(3, 8))
        gray = (rng.integers(0, lv, (h, w)) * (255 // (lv - 1))).astype(np.uint8)
        rgb = np.repeat((gray / 255.0)[..., None], 3, axis=2)
        want = mser_count_ref(
            gray, 5, max(1, round(1e-4 * h * w)), int(0.25 * h * w), 0.25, 0.2
        )
        assert mser_count(rgb) == want


def test_mser_matches_reference_near_saturation():
    rng = np.random.default_rng(5)
    for _ in range(15):
        h, w = int(rng.integers(12, 20)), int(rng.integers(12, 20))
        gray = rng.choice([0, 120, 200, 252, 255], size=(h, w)).astype(np.uint8)
        rgb = np.repeat((gray / 255.0)[..., None], 3, axis=2)
        want = mser_count_ref(
            gray, 5, max(1, round(1e-4 * h * w)), int(0.25 * h * w), 0.25, 0.2
        )
        assert mser_count(rgb) == want
