"""Grayscale conversion, bit planes, quantization, resizing, file IO."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp
from PIL import Image

from sparsefuse.errors import DimensionError
from sparsefuse.imaging import (
    as_gray,
    bilinear_resize,
    bit_planes,
    from_bit_planes,
    load_image,
    quantize,
    resize_gray,
    round_half_up,
    save_image,
    to_grayscale,
)


def test_round_half_up_examples():
    values = np.array([0.0, 0.5, 1.49, 1.5, 2.4, -0.5, -0.4])
    assert round_half_up(values).tolist() == [0.0, 1.0, 1.0, 2.0, 2.0, 0.0, 0.0]


@pytest.mark.parametrize(
    "rgb, expected",
    [
        ((255, 0, 0), 76),    # 0.299 * 255 = 76.245
        ((0, 255, 0), 150),   # 0.587 * 255 = 149.685
        ((0, 0, 255), 29),    # 0.114 * 255 = 29.07
        ((255, 255, 255), 255),
        ((0, 0, 0), 0),
        ((100, 100, 100), 100),
    ],
)
def test_grayscale_luma_weights(rgb, expected):
    raster = np.zeros((2, 3, 3), dtype=np.uint8)
    raster[..., 0], raster[..., 1], raster[..., 2] = rgb
    assert np.all(to_grayscale(raster) == expected)


def test_grayscale_accepts_channel_triple():
    rng = np.random.default_rng(1)
    raster = rng.integers(0, 256, size=(5, 4, 3), dtype=np.uint8)
    triple = (raster[..., 0], raster[..., 1], raster[..., 2])
    assert np.array_equal(to_grayscale(triple), to_grayscale(raster))


def test_grayscale_rejects_mismatched_channels():
    with pytest.raises(DimensionError):
        to_grayscale((np.zeros((2, 2)), np.zeros((2, 3)), np.zeros((2, 2))))
    with pytest.raises(DimensionError):
        to_grayscale(np.zeros((2, 2, 4), dtype=np.uint8))


def test_as_gray_validates_range_and_shape():
    with pytest.raises(DimensionError):
        as_gray(np.zeros((2, 2, 2), dtype=np.uint8))
    with pytest.raises(ValueError):
        as_gray(np.array([[0, 300]]))
    with pytest.raises(ValueError):
        as_gray(np.array([[0.5, 1.0]]))
    out = as_gray(np.array([[0, 255]], dtype=np.int64))
    assert out.dtype == np.uint8


def test_bit_planes_known_value():
    planes = bit_planes(np.array([[178]], dtype=np.uint8))
    assert planes[:, 0, 0].tolist() == [0, 1, 0, 0, 1, 1, 0, 1]  # 178 = 0b10110010


def test_bit_planes_rejects_out_of_range_for_depth():
    bit_planes(np.array([[3]], dtype=np.uint8), p_depth=2)
    with pytest.raises(ValueError):
        bit_planes(np.array([[4]], dtype=np.uint8), p_depth=2)
    with pytest.raises(ValueError):
        bit_planes(np.array([[0]], dtype=np.uint8), p_depth=0)
    with pytest.raises(ValueError):
        bit_planes(np.array([[0]], dtype=np.uint8), p_depth=9)


@settings(max_examples=50, deadline=None)
@given(hnp.arrays(np.uint8, hnp.array_shapes(min_dims=2, max_dims=2, max_side=16)))
def test_bit_planes_round_trip(img):
    assert np.array_equal(from_bit_planes(bit_planes(img)), img)


def test_quantize_minmax_rescales_linearly():
    out = quantize(np.array([[0.0, 1.0], [2.0, 4.0]]), "minmax_0_255")
    assert out.tolist() == [[0, 64], [128, 255]]  # 63.75 and 127.5 round up


def test_quantize_minmax_constant_maps_to_zero():
    assert np.all(quantize(np.full((3, 3), 7.0), "minmax_0_255") == 0)


def test_quantize_direction_rounds_degrees():
    out = quantize(np.array([[0.0, 90.4], [90.5, 180.0]]), "direction_degrees")
    assert out.tolist() == [[0, 90], [91, 180]]
    with pytest.raises(ValueError):
        quantize(np.array([[-1.0, 0.0]]), "direction_degrees")
    with pytest.raises(ValueError):
        quantize(np.array([[0.0, 181.0]]), "direction_degrees")


def test_quantize_rejects_bad_input():
    with pytest.raises(ValueError):
        quantize(np.zeros((2, 2)), "nope")
    with pytest.raises(ValueError):
        quantize(np.array([[np.inf, 0.0]]), "minmax_0_255")
    with pytest.raises(DimensionError):
        quantize(np.zeros(4), "minmax_0_255")


def test_bilinear_resize_identity_is_exact_copy():
    rng = np.random.default_rng(2)
    img = rng.integers(0, 256, size=(6, 7), dtype=np.uint8)
    out = bilinear_resize(img, 6, 7)
    assert np.array_equal(out, img.astype(np.float64))


def test_bilinear_resize_interpolates_center_aligned():
    out = bilinear_resize(np.array([[0.0, 2.0]]), 1, 4)
    assert out.tolist() == [[0.0, 0.5, 1.5, 2.0]]


def test_resize_gray_rounds_half_up():
    out = resize_gray(np.array([[0, 2]], dtype=np.uint8), 1, 4)
    assert out.tolist() == [[0, 1, 2, 2]]
    assert out.dtype == np.uint8


def test_resize_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        bilinear_resize(np.zeros((2, 2)), 0, 2)
    with pytest.raises(DimensionError):
        bilinear_resize(np.zeros(4), 2, 2)


def test_save_and_load_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    img = rng.integers(0, 256, size=(9, 11), dtype=np.uint8)
    path = tmp_path / "img.png"
    save_image(path, img)
    assert np.array_equal(load_image(path), img)


def test_load_color_image_converts_with_luma_weights(tmp_path):
    rng = np.random.default_rng(4)
    raster = rng.integers(0, 256, size=(5, 6, 3), dtype=np.uint8)
    path = tmp_path / "color.png"
    Image.fromarray(raster, mode="RGB").save(path)
    assert np.array_equal(load_image(path), to_grayscale(raster))
