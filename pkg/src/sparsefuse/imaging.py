"""Image representation, conversion, quantization, and bit-plane slicing.

Conventions used throughout the package:

* A gray image is a 2D ``uint8`` numpy array of shape ``(m, n)`` with
  ``m`` rows (height) and ``n`` columns (width), row-major.
* A real image is a 2D ``float64`` array of the same layout, holding
  intermediate values (gradients, directions) before 8-bit quantization.
* A bit-plane stack is a ``(P, m, n)`` ``uint8`` array of 0/1 planes with
  plane ``p`` carrying bit significance ``2**p`` (plane 0 = LSB).

All rounding of real values to integers is round-half-up so results are
reproducible bit-for-bit across implementations.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import DimensionError

# BT.601 luma weights for RGB -> gray.
_LUMA = (0.299, 0.587, 0.114)

QUANTIZE_MODES = ("minmax_0_255", "direction_degrees")


def round_half_up(values: np.ndarray) -> np.ndarray:
    """Round to nearest integer, halves away from zero toward +inf."""
    return np.floor(np.asarray(values, dtype=np.float64) + 0.5)


def as_gray(img) -> np.ndarray:
    """Validate and return a 2D uint8 gray image."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise DimensionError(f"gray image must be 2D, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"gray image must be integer-valued, got dtype {arr.dtype}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("gray image values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def to_grayscale(rgb) -> np.ndarray:
    """Convert an 8-bit RGB raster to gray with BT.601 weights.

    Accepts an ``(m, n, 3)`` array or a (R, G, B) triple of 2D arrays.
    """
    if isinstance(rgb, (tuple, list)):
        if len(rgb) != 3:
            raise DimensionError("expected exactly three channels")
        channels = [np.asarray(c) for c in rgb]
        if not (channels[0].shape == channels[1].shape == channels[2].shape):
            raise DimensionError("channel dimensions differ")
        stack = np.stack(channels, axis=-1)
    else:
        stack = np.asarray(rgb)
    if stack.ndim != 3 or stack.shape[-1] != 3:
        raise DimensionError(f"expected (m, n, 3) raster, got shape {stack.shape}")
    gray = (
        _LUMA[0] * stack[..., 0].astype(np.float64)
        + _LUMA[1] * stack[..., 1]
        + _LUMA[2] * stack[..., 2]
    )
    return np.clip(round_half_up(gray), 0, 255).astype(np.uint8)


def bit_planes(img, p_depth: int = 8) -> np.ndarray:
    """Slice a gray image into `p_depth` binary planes (plane 0 = LSB)."""
    arr = as_gray(img)
    if not 1 <= p_depth <= 8:
        raise ValueError(f"bit depth must be in [1, 8], got {p_depth}")
    if arr.size and arr.max() > (1 << p_depth) - 1:
        raise ValueError(f"pixel values exceed {p_depth}-bit range")
    planes = np.empty((p_depth, *arr.shape), dtype=np.uint8)
    for p in range(p_depth):
        planes[p] = (arr >> p) & 1
    return planes


def from_bit_planes(planes: np.ndarray) -> np.ndarray:
    """Reassemble the source image from its bit-plane stack."""
    planes = np.asarray(planes)
    weights = (1 << np.arange(planes.shape[0], dtype=np.int32))
    return (planes.astype(np.int32) * weights[:, None, None]).sum(axis=0).astype(np.uint8)


def quantize(values: np.ndarray, mode: str) -> np.ndarray:
    """Quantize a real image to 8 bits.

    ``minmax_0_255`` rescales [min, max] linearly onto [0, 255]; a constant
    image maps to all zeros (it carries no information and a zero divisor
    must be avoided). ``direction_degrees`` rounds values already in
    [0, 180] to the nearest integer.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2D image, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image contains non-finite values")
    if mode == "minmax_0_255":
        lo = arr.min()
        hi = arr.max()
        if hi == lo:
            return np.zeros(arr.shape, dtype=np.uint8)
        scaled = (arr - lo) * (255.0 / (hi - lo))
        return np.clip(round_half_up(scaled), 0, 255).astype(np.uint8)
    if mode == "direction_degrees":
        if arr.size and (arr.min() < 0.0 or arr.max() > 180.0):
            raise ValueError("direction values must lie in [0, 180]")
        return round_half_up(arr).astype(np.uint8)
    raise ValueError(f"unknown quantize mode {mode!r}; expected one of {QUANTIZE_MODES}")


def bilinear_resize(img: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resample to (out_h, out_w) with center-aligned pixel grids.

    Returns float64; callers quantize. A no-op size returns an exact copy.
    """
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2D image, got shape {arr.shape}")
    m, n = arr.shape
    if out_h < 1 or out_w < 1:
        raise ValueError("output dimensions must be positive")
    if (out_h, out_w) == (m, n):
        return arr.copy()

    def axis_coords(out_len: int, in_len: int) -> tuple[np.ndarray, np.ndarray]:
        src = (np.arange(out_len, dtype=np.float64) + 0.5) * (in_len / out_len) - 0.5
        src = np.clip(src, 0.0, in_len - 1.0)
        lo = np.floor(src).astype(np.int64)
        lo = np.minimum(lo, in_len - 2) if in_len > 1 else np.zeros_like(lo)
        frac = src - lo
        return lo, frac

    y0, fy = axis_coords(out_h, m)
    x0, fx = axis_coords(out_w, n)
    y1 = np.minimum(y0 + 1, m - 1)
    x1 = np.minimum(x0 + 1, n - 1)
    fy = fy[:, None]
    fx = fx[None, :]
    top = arr[np.ix_(y0, x0)] * (1.0 - fx) + arr[np.ix_(y0, x1)] * fx
    bot = arr[np.ix_(y1, x0)] * (1.0 - fx) + arr[np.ix_(y1, x1)] * fx
    return top * (1.0 - fy) + bot * fy


def resize_gray(img: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resize of a gray image back to uint8."""
    arr = as_gray(img)
    if arr.shape == (out_h, out_w):
        return arr.copy()
    return np.clip(round_half_up(bilinear_resize(arr, out_h, out_w)), 0, 255).astype(np.uint8)


def load_image(path) -> np.ndarray:
    """Read an 8-bit PNG or PPM/PGM file as a gray image.

    Color inputs are converted with :func:`to_grayscale`.
    """
    with Image.open(path) as handle:
        if handle.mode == "L":
            return np.asarray(handle, dtype=np.uint8)
        rgb = handle.convert("RGB")
        return to_grayscale(np.asarray(rgb, dtype=np.uint8))


def save_image(path, img: np.ndarray) -> None:
    """Write a gray image; format chosen from the extension (.png/.pgm/.ppm)."""
    arr = as_gray(img)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr, mode="L").save(path)
