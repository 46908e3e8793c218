"""Texture smoothness, LBP pyramid and depth-of-field features."""

import numpy as np
import pytest

from imgq import (
    TooSmall,
    dof_laplacian,
    dof_spatial_spread,
    dof_wavelet,
    laplacian_smoothness,
    lbp_codes,
    lbp_pyramid,
    wavelet_smoothness,
)
from imgq.texture import LBP_DIM

from .conftest import checker_pattern, rgb_noise
from .oracles import (
    _binomial5_ref,
    dof_laplacian_ref,
    lab_lightness_ref,
    laplacian_finest_ref,
    lbp_naive,
)


def test_wavelet_smoothness_checkerboard():
    # one diagonal pair of full-white pixels per 2x2 block: every block puts
    # its lightness contrast into HH alone, so the mean detail power is
    # (L_white squared) / 3
    assert wavelet_smoothness(checker_pattern(0, size=32)) == pytest.approx(
        10000.0 / 3.0, rel=1e-6
    )


def test_wavelet_smoothness_even_shift_invariant():
    ck = checker_pattern(1, size=32)
    rolled = np.roll(ck, (2, 4), axis=(0, 1))
    assert wavelet_smoothness(rolled) == wavelet_smoothness(ck)


def test_wavelet_smoothness_constant_zero():
    assert wavelet_smoothness(np.full((16, 16, 3), 0.5)) == 0.0


def test_wavelet_smoothness_drops_under_blur():
    from imgq.raster import gaussian_blur

    img = rgb_noise(2, 32, 32)
    soft = np.clip(
        np.stack([gaussian_blur(img[..., k], 2.0) for k in range(3)], axis=-1), 0, 1
    )
    assert wavelet_smoothness(soft) < wavelet_smoothness(img)


def test_laplacian_smoothness_matches_reference_route():
    img = rgb_noise(3, 24, 20)
    light = lab_lightness_ref(img)
    down = _binomial5_ref(light)[::2, ::2]
    detail = laplacian_finest_ref(down)
    want = (detail**2).sum() / detail.size
    assert laplacian_smoothness(img) == pytest.approx(want, abs=1e-9)


def test_laplacian_smoothness_constant_zero():
    assert laplacian_smoothness(np.full((16, 16, 3), 0.5)) == 0.0


def test_lbp_codes_match_naive():
    for seed, (h, w) in [(4, (12, 14)), (5, (9, 9)), (6, (20, 7))]:
        plane = np.dot(rgb_noise(seed, h, w), [0.299, 0.587, 0.114])
        assert np.array_equal(lbp_codes(plane), lbp_naive(plane))


def test_lbp_codes_constant_plane():
    codes = lbp_codes(np.full((6, 6), 0.5))
    assert codes.shape == (4, 4)
    assert np.all(codes == 255)


def test_lbp_codes_orientation():
    # lone bright east neighbor of the center sets only bit 0
    plane = np.zeros((3, 3))
    plane[1, 2] = 1.0
    plane[1, 1] = 0.5
    assert lbp_codes(plane)[0, 0] == 1


def test_lbp_pyramid_shape_and_normalization():
    vec = lbp_pyramid(rgb_noise(7, 24, 24))
    assert vec.shape == (LBP_DIM,)
    sums = vec.reshape(20, 256).sum(axis=1)
    np.testing.assert_allclose(sums, 1.0, atol=1e-12)


def test_lbp_pyramid_constant_image():
    vec = lbp_pyramid(np.full((16, 16, 3), 0.3)).reshape(20, 256)
    np.testing.assert_allclose(vec[:, 255], 1.0)
    assert vec[:, :255].sum() == 0.0


def test_dof_wavelet_checkerboard_exact():
    for seed in range(5):
        assert dof_wavelet(checker_pattern(seed, size=64)) == 0.25


def test_dof_wavelet_centered_detail():
    img = np.full((64, 64, 3), 0.5)
    img[16:48, 16:48] = checker_pattern(8, size=32)
    assert dof_wavelet(img) > 0.9


def test_dof_laplacian_matches_reference():
    for seed, (h, w) in [(9, (16, 16)), (10, (18, 22)), (11, (25, 17))]:
        img = rgb_noise(seed, h, w)
        assert dof_laplacian(img) == pytest.approx(dof_laplacian_ref(img), abs=1e-9)


def test_dof_constant_image():
    flat = np.full((16, 16, 3), 0.5)
    assert dof_wavelet(flat) == 0.0
    assert dof_laplacian(flat) == 0.0
    assert dof_spatial_spread(flat) == 0.0


def test_spread_grows_with_separation():
    base = np.full((64, 64, 3), 0.5)
    close = base.copy()
    close[30, 30] = close[30, 34] = 1.0
    far = base.copy()
    far[8, 8] = far[56, 56] = 1.0
    assert 0.0 < dof_spatial_spread(close) < dof_spatial_spread(far)


def test_spread_matches_reference_route():
    img = rgb_noise(12, 20, 20)
    power = laplacian_finest_ref(lab_lightness_ref(img)) ** 2
    m, n = power.shape
    rows = np.arange(m)[:, None]
    cols = np.arange(n)[None, :]
    c_row = (power * rows).sum() / power.sum()
    c_col = (power * cols).sum() / power.sum()
    dist = np.sqrt((rows - c_row) ** 2 + (cols - c_col) ** 2)
    want = (power * dist).sum() / (m * n)
    assert dof_spatial_spread(img) == pytest.approx(want, abs=1e-9)


def test_dof_noise_images_average_near_quarter():
    # detail power of i.i.d. noise is uniform in expectation, so the 20-seed
    # mean sits near the 4/16 area ratio (sampling scatter ~2e-3)
    vals_w, vals_l = [], []
    for seed in range(20):
        img = rgb_noise(100 + seed, 64, 64)
        vals_w.append(dof_wavelet(img))
        vals_l.append(dof_laplacian(img))
    assert np.mean(vals_w) == pytest.approx(0.25, abs=0.01)
    assert np.mean(vals_l) == pytest.approx(0.25, abs=0.01)


def test_spread_even_shift_invariant():
    rng = np.random.default_rng(13)
    block = rng.integers(0, 256, (10, 10, 3)) / 255.0
    a = np.full((64, 64, 3), 0.5)
    a[20:30, 20:30] = block
    b = np.full((64, 64, 3), 0.5)
    b[24:34, 26:36] = block
    assert dof_spatial_spread(a) == dof_spatial_spread(b)


def test_minimum_extents():
    tiny = np.full((8, 8, 3), 0.5)
    with pytest.raises(TooSmall):
        dof_wavelet(tiny)
    with pytest.raises(TooSmall):
        laplacian_smoothness(tiny)
    with pytest.raises(TooSmall):
        wavelet_smoothness(np.full((4, 4, 3), 0.5))
