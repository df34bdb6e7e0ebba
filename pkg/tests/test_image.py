import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nlclip.image import Image, Patch, PixelIndex, extract_patch, pad_mirror, reflect_index

unit_images = arrays(
    np.float64,
    st.tuples(st.integers(1, 9), st.integers(1, 9)),
    elements=st.floats(0.0, 1.0, allow_nan=False),
)


def test_image_rejects_out_of_range():
    with pytest.raises(ValueError):
        Image(np.array([[1.5]]))
    with pytest.raises(ValueError):
        Image(np.array([[-0.1, 0.2]]))
    with pytest.raises(ValueError):
        Image(np.zeros((0, 3)))


def test_image_is_read_only():
    img = Image(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        img.data[0, 0] = 1.0
    assert img.width == 2 and img.height == 2
    assert img[PixelIndex(1, 1)] == 0.0


def test_pad_single_pixel():
    out = pad_mirror(Image(np.array([[0.5]])), 1)
    assert out.shape == (3, 3)
    assert np.all(out.data == 0.5)


def test_pad_row_mirrors_without_edge_duplication():
    a, b, c = 0.1, 0.2, 0.3
    out = pad_mirror(Image(np.array([[a, b, c]])), 1)
    # the single row reflects onto itself vertically
    for row in out.data:
        np.testing.assert_array_equal(row, [b, a, b, c, b])


def test_pad_matches_index_arithmetic(rng):
    img = Image(rng.random((4, 4)))
    margin = 2
    out = pad_mirror(img, margin)
    np.testing.assert_array_equal(out.data[margin:-margin, margin:-margin], img.data)
    for y in range(out.height):
        for x in range(out.width):
            src = (reflect_index(y - margin, 4), reflect_index(x - margin, 4))
            assert out.data[y, x] == img.data[src]


def test_pad_wide_margin_repeats_reflection(rng):
    img = Image(rng.random((3, 2)))
    margin = 7
    out = pad_mirror(img, margin)
    assert out.shape == (3 + 14, 2 + 14)
    for y in range(out.height):
        for x in range(out.width):
            assert out.data[y, x] == img.data[reflect_index(y - margin, 3), reflect_index(x - margin, 2)]


def test_pad_negative_margin():
    with pytest.raises(ValueError):
        pad_mirror(Image(np.zeros((2, 2))), -1)


@settings(max_examples=50, deadline=None)
@given(unit_images, st.integers(0, 12))
def test_pad_then_crop_is_identity(data, margin):
    img = Image(data)
    out = pad_mirror(img, margin)
    crop = out.data[margin : margin + img.height, margin : margin + img.width]
    np.testing.assert_array_equal(crop, img.data)


@settings(max_examples=50, deadline=None)
@given(unit_images, st.sampled_from([1, 3, 5]))
def test_patch_center_is_the_pixel(data, r):
    img = Image(data)
    half = r // 2
    padded = pad_mirror(img, half)
    for y in range(img.height):
        for x in range(img.width):
            assert extract_patch(padded, (y + half, x + half), r).center_value == img.data[y, x]


def test_extract_patch_constant():
    img = Image.constant(6, 6, 0.3)
    p = extract_patch(img, PixelIndex(2, 3), 3)
    assert p.side == 3
    assert np.all(p.values == 0.3)


def test_extract_patch_ramp():
    width = 6
    ramp = np.tile(np.arange(width) / width, (5, 1))
    p = extract_patch(Image(ramp), PixelIndex(2, 2), 3)
    np.testing.assert_array_equal(p.values, ramp[1:4, 1:4])
    np.testing.assert_array_equal(p.values[0], [1 / 6, 2 / 6, 3 / 6])


def test_extract_patch_degenerate(rng):
    img = Image(rng.random((3, 3)))
    p = extract_patch(img, (0, 2), 1)
    assert p.values.shape == (1, 1)
    assert p.center_value == img.data[0, 2]


def test_extract_patch_out_of_bounds():
    img = Image(np.zeros((4, 4)))
    with pytest.raises(IndexError, match="pad"):
        extract_patch(img, (0, 1), 3)
    with pytest.raises(ValueError):
        extract_patch(img, (2, 2), 2)


def test_patch_requires_odd_square():
    with pytest.raises(ValueError):
        Patch(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        Patch(np.zeros((3, 1)))
    assert Patch(np.arange(9.0).reshape(3, 3)).center_value == 4.0
