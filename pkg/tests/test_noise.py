import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlclip.image import Image
from nlclip.noise import (
    NoiseDistribution,
    NoiseSpec,
    add_speckle,
    generate_checker,
    generate_step_edge,
    speckle_field,
)


def test_zero_image_stays_zero():
    out = add_speckle(Image(np.zeros((8, 8))), NoiseSpec(0.1, seed=3))
    assert np.all(out.data == 0.0)


def test_moments_on_constant_image():
    clean = Image.constant(256, 256, 0.5)
    noisy = add_speckle(clean, NoiseSpec(0.04, seed=11))
    assert abs(noisy.data.mean() - 0.5) < 0.01
    # half-width sqrt(3 * 0.04) * 0.5 keeps every pixel inside [0, 1]
    unclamped = (noisy.data > 0.0) & (noisy.data < 1.0)
    assert unclamped.all()
    rel = (noisy.data[unclamped] - 0.5) / 0.5
    assert abs(rel.var() - 0.04) < 0.005


def test_same_seed_is_bit_identical():
    clean = generate_checker(32, 32, 8)
    a = add_speckle(clean, NoiseSpec(0.05, seed=42))
    b = add_speckle(clean, NoiseSpec(0.05, seed=42))
    assert a.data.tobytes() == b.data.tobytes()
    c = add_speckle(clean, NoiseSpec(0.05, seed=43))
    assert not np.array_equal(a.data, c.data)


@pytest.mark.parametrize("dist", list(NoiseDistribution))
@pytest.mark.parametrize("variance", [0.01, 0.05, 0.1])
def test_noise_field_moments(dist, variance):
    n = speckle_field((200, 200), NoiseSpec(variance, seed=5, distribution=dist))
    assert abs(n.mean()) < 3 * np.sqrt(variance / n.size)
    assert abs(n.var() - variance) < 0.1 * variance
    if dist is NoiseDistribution.UNIFORM:
        assert np.abs(n).max() <= np.sqrt(3 * variance)


def test_draws_are_row_major():
    spec = NoiseSpec(0.02, seed=9)
    full = speckle_field((4, 6), spec)
    flat = speckle_field((24,), spec)
    np.testing.assert_array_equal(full.ravel(), flat)


@settings(max_examples=30, deadline=None)
@given(st.floats(1e-4, 2.0), st.integers(0, 2**63 - 1))
def test_output_stays_in_unit_range(variance, seed):
    clean = generate_checker(16, 16, 4, 0.1, 0.9)
    out = add_speckle(clean, NoiseSpec(variance, seed))
    assert out.data.min() >= 0.0 and out.data.max() <= 1.0


def test_noise_spec_validation():
    with pytest.raises(ValueError):
        NoiseSpec(0.0)
    with pytest.raises(ValueError):
        NoiseSpec(0.1, distribution="poisson")


def test_checker_minimal():
    np.testing.assert_array_equal(generate_checker(2, 2, 1, 0.0, 1.0).data, [[1, 0], [0, 1]])


def test_checker_two_levels():
    img = generate_checker(10, 7, 3, 0.2, 0.6)
    assert set(np.unique(img.data)) == {0.2, 0.6}


def test_checker_block_scan():
    img = generate_checker(128, 128, 16)
    blocks = 0
    for by in range(8):
        for bx in range(8):
            block = img.data[by * 16 : (by + 1) * 16, bx * 16 : (bx + 1) * 16]
            expected = 1.0 if (by + bx) % 2 == 0 else 0.0
            assert np.all(block == expected)
            blocks += 1
    assert blocks == 64


def test_checker_validation():
    with pytest.raises(ValueError):
        generate_checker(4, 4, 0)
    with pytest.raises(ValueError):
        generate_checker(4, 4, 2, 0.5, 0.5)


def test_step_edge():
    np.testing.assert_array_equal(generate_step_edge(4, 1, 0.0, 1.0).data, [[0, 0, 1, 1]])
    img = generate_step_edge(64, 64)
    assert np.all(np.diff(img.data, axis=1) >= 0)
    assert np.sum(img.data[0] == 0.0) == 32
    assert np.sum(img.data[0] == 1.0) == 32
    with pytest.raises(ValueError):
        generate_step_edge(1, 4)
