import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nlclip.filters import (
    Anchor,
    FilterParams,
    clip_limits,
    default_backend,
    denoise,
    denoise_clipped,
    denoise_nlm,
    patch_sum,
    reference_box_mean,
    reference_denoise,
)
from nlclip.filters import kernels
from nlclip.image import Image, extract_patch, pad_mirror, reflect_index

ANCHORS = [Anchor.NONE, Anchor.MEAN, Anchor.MEDIAN]


def nested_loop_pixel_nlm(data, s, h):
    """Window-restricted NLM with 1x1 patches, written out with explicit index reflection."""
    height, width = data.shape
    hs = s // 2
    out = np.empty_like(data)
    for y in range(height):
        for x in range(width):
            num = den = 0.0
            for dy in range(-hs, hs + 1):
                for dx in range(-hs, hs + 1):
                    v = data[reflect_index(y + dy, height), reflect_index(x + dx, width)]
                    w = math.exp(-((data[y, x] - v) ** 2) / h**2)
                    num += w * v
                    den += w
            out[y, x] = num / den
    return out


@pytest.mark.parametrize("anchor", ANCHORS)
@pytest.mark.parametrize("value", [0.0, 0.2, 1 / 3, 0.7, 1.0])
def test_constant_image_is_fixpoint(anchor, value, backend):
    img = Image.constant(9, 6, value)
    out = denoise(img, FilterParams(h=0.1, s=4, r=3, anchor=anchor), backend)
    assert np.array_equal(out.data, img.data)


def test_pixel_nlm_matches_nested_loops(rng, backend):
    img = Image(rng.random((5, 5)))
    params = FilterParams(h=1.0, s=2, r=1)
    assert params.window_side == 3
    expected = nested_loop_pixel_nlm(img.data, 2, 1.0)
    np.testing.assert_allclose(denoise_nlm(img, params, backend).data, expected, rtol=0, atol=1e-14)


def test_unit_window_returns_input(rng, backend):
    img = Image(rng.random((5, 6)))
    for anchor in ANCHORS:
        out = denoise(img, FilterParams(h=0.5, s=1, r=3, anchor=anchor), backend)
        np.testing.assert_array_equal(out.data, img.data)


def test_large_h_gives_box_mean(rng, backend):
    img = Image(rng.random((12, 10)))
    out = denoise_nlm(img, FilterParams(h=1e6, s=4, r=3), backend)
    assert np.abs(out.data - reference_box_mean(img, 4).data).max() < 1e-6


@pytest.fixture
def outlier_image():
    data = np.full((7, 7), 0.2)
    data[3, 3] = 1.0
    return Image(data)


def test_outlier_median_anchor_matches_oracle(outlier_image, backend):
    params = FilterParams(h=0.3, s=3, r=3, anchor=Anchor.MEDIAN)
    out = denoise_clipped(outlier_image, params, backend)
    ref = reference_denoise(outlier_image, params)
    np.testing.assert_allclose(out.data, ref.data, rtol=0, atol=1e-12)


def test_outlier_patches_are_clipped(outlier_image):
    # pixel (1, 1): its 3x3 window reaches (2, 2), whose patch holds the outlier
    params = FilterParams(h=0.3, s=3, r=3)
    padded = pad_mirror(outlier_image, 2)
    window = [(1 + 2 + dy, 1 + 2 + dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1)]
    sums = [patch_sum(extract_patch(padded, j, params.r)) for j in window]
    stats = clip_limits(sums, Anchor.MEDIAN)
    outlier_sum = 8 * 0.2 + 1.0
    assert max(sums) == pytest.approx(outlier_sum)
    assert stats.upper < outlier_sum


def test_median_anchor_resists_the_outlier(outlier_image):
    padded = pad_mirror(outlier_image, 2)
    minority = majority = 0
    for row in range(7):
        for col in range(7):
            window = [
                (row + 2 + dy, col + 2 + dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1)
            ]
            sums = [patch_sum(extract_patch(padded, j, 3)) for j in window]
            touched = sum(v > min(sums) for v in sums)
            if not 0 < touched < len(sums):
                continue
            med = clip_limits(sums, Anchor.MEDIAN).anchor_value
            mean = clip_limits(sums, Anchor.MEAN).anchor_value
            if touched < len(sums) / 2:
                # outlier patches are a minority: the median ignores them
                assert med == min(sums) < mean
                minority += 1
            else:
                assert med == max(sums) > mean
                majority += 1
    assert minority > 0 and majority > 0
    for anchor in (Anchor.MEAN, Anchor.MEDIAN):
        params = FilterParams(h=0.3, s=3, r=3, anchor=anchor)
        np.testing.assert_allclose(
            denoise(outlier_image, params).data,
            reference_denoise(outlier_image, params).data,
            rtol=0,
            atol=1e-12,
        )


def test_zero_clipped_weight_falls_back_to_plain_mean(outlier_image, backend):
    # r=1: the centre's sum (1.0) lies outside median 0.2 +/- 0.267; tiny h
    # underflows every other weight, so the clipped set carries zero weight
    params = FilterParams(h=1e-3, s=3, r=1, anchor=Anchor.MEDIAN)
    out = denoise_clipped(outlier_image, params, backend)
    ref = reference_denoise(outlier_image, params)
    assert out.data[3, 3] == 1.0
    assert np.all(np.isfinite(ref.data))
    np.testing.assert_allclose(out.data, ref.data, rtol=0, atol=1e-12)


def test_dispatch(rng, backend):
    img = Image(rng.random((8, 8)))
    nlm = FilterParams(h=0.4, s=4)
    np.testing.assert_array_equal(denoise(img, nlm, backend).data, denoise_nlm(img, nlm, backend).data)
    with pytest.raises(ValueError):
        denoise_nlm(img, FilterParams(h=0.4, anchor=Anchor.MEDIAN))
    with pytest.raises(ValueError):
        denoise_clipped(img, nlm)


def test_median_matches_oracle_16x16(rng, backend):
    img = Image(rng.random((16, 16)))
    params = FilterParams(h=0.5, s=4, r=3, anchor=Anchor.MEDIAN)
    diff = np.abs(denoise(img, params, backend).data - reference_denoise(img, params).data)
    assert diff.max() < 1e-12


@pytest.mark.parametrize("anchor", ANCHORS)
def test_single_pixel_image(anchor, backend):
    img = Image(np.array([[0.37]]))
    out = denoise(img, FilterParams(h=0.2, anchor=anchor), backend)
    assert out.data[0, 0] == 0.37


@pytest.mark.parametrize("anchor", ANCHORS)
def test_patch_aggregate_equals_center_reduction(rng, anchor):
    img = Image(rng.random((9, 8)))
    params = FilterParams(h=0.6, s=4, r=3, anchor=anchor)
    center = reference_denoise(img, params, aggregate="center")
    patch = reference_denoise(img, params, aggregate="patch")
    np.testing.assert_allclose(center.data, patch.data, rtol=0, atol=1e-13)


@pytest.mark.parametrize("anchor", ANCHORS)
def test_normalized_distance_matches_oracle(rng, anchor, backend):
    img = Image(rng.random((10, 10)))
    params = FilterParams(h=0.3, s=4, r=3, anchor=anchor, normalize_distance=True)
    np.testing.assert_allclose(
        denoise(img, params, backend).data, reference_denoise(img, params).data, rtol=0, atol=1e-12
    )


@pytest.mark.parametrize("anchor", ANCHORS)
def test_backends_agree(rng, anchor):
    img = Image(rng.random((40, 33)))
    params = FilterParams(h=0.3, anchor=anchor)
    a = denoise(img, params, "numba").data
    b = denoise(img, params, "numpy").data
    assert np.abs(a - b).max() < 1e-12


@pytest.mark.parametrize("anchor", ANCHORS)
def test_output_within_window_range(rng, anchor, backend):
    img = Image(rng.random((12, 12)))
    params = FilterParams(h=0.4, s=4, r=3, anchor=anchor)
    out = denoise(img, params, backend).data
    padded = pad_mirror(img, 2).data
    for y in range(12):
        for x in range(12):
            window = padded[y : y + 5, x : x + 5]
            assert window.min() - 1e-15 <= out[y, x] <= window.max() + 1e-15


@settings(max_examples=25, deadline=None)
@given(
    arrays(np.float64, (10, 9), elements=st.floats(0, 1)),
    st.sampled_from(ANCHORS),
    st.floats(0.05, 2.0),
)
def test_flip_equivariance(data, anchor, h):
    img = Image(data)
    params = FilterParams(h=h, s=4, r=3, anchor=anchor)
    base = denoise(img, params).data
    for op in (np.fliplr, np.flipud, np.rot90):
        moved = denoise(Image(op(data)), params).data
        assert np.abs(moved - op(base)).max() < 1e-12


def test_thread_count_does_not_change_output(rng):
    numba = pytest.importorskip("numba")
    img = Image(rng.random((24, 24)))
    params = FilterParams(h=0.3, anchor=Anchor.MEDIAN)
    before = numba.get_num_threads()
    try:
        results = []
        for n in sorted({1, numba.config.NUMBA_NUM_THREADS}):
            numba.set_num_threads(n)
            results.append(denoise(img, params, "numba").data.tobytes())
    finally:
        numba.set_num_threads(before)
    assert len(set(results)) == 1


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("NLCLIP_DISABLE_NUMBA", "1")
    assert default_backend() == "numpy"
    monkeypatch.delenv("NLCLIP_DISABLE_NUMBA")
    assert default_backend() == ("numba" if kernels.HAVE_NUMBA else "numpy")


def test_unknown_backend(rng):
    with pytest.raises(ValueError):
        denoise(Image(rng.random((3, 3))), FilterParams(h=1), backend="cuda")
