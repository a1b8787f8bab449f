"""First-order gradient filtering: Sobel/Prewitt, magnitude, direction.

Direction is the quadrant-blind ``arctan(gy/gx)`` mapped from [-90, 90]
into [0, 180] by adding 90 degrees, so downstream 8-bit processing never
sees a negative value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True, eq=False)
class Kernel:
    """A 3x3 derivative operator pair; ky is the transpose of kx."""

    name: str
    kx: np.ndarray
    ky: np.ndarray = field(init=False)

    def __post_init__(self):
        kx = np.asarray(self.kx, dtype=np.int64)
        object.__setattr__(self, "kx", kx)
        object.__setattr__(self, "ky", kx.T.copy())


SOBEL = Kernel("sobel", [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]])
PREWITT = Kernel("prewitt", [[-1, 0, 1], [-1, 0, 1], [-1, 0, 1]])

KERNELS = {k.name: k for k in (SOBEL, PREWITT)}


def convolve(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Slide a square odd-sized kernel over the image.

    Borders are replicate-padded so the output keeps the input shape. The
    kernel is applied in the orientation in which its entries are written:
    a kernel whose rightmost column is positive responds positively to
    intensity increasing with column index.
    """
    arr = np.asarray(img, dtype=np.float64)
    k = np.asarray(kernel, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2D image, got shape {arr.shape}")
    if k.ndim != 2 or k.shape[0] != k.shape[1] or k.shape[0] % 2 == 0:
        raise DimensionError(f"kernel must be square with odd size, got {k.shape}")
    if arr.shape[0] < k.shape[0] or arr.shape[1] < k.shape[1]:
        raise DimensionError(f"image {arr.shape} smaller than kernel {k.shape}")
    radius = k.shape[0] // 2
    padded = np.pad(arr, radius, mode="edge")
    m, n = arr.shape
    out = np.zeros((m, n), dtype=np.float64)
    for u in range(k.shape[0]):
        for v in range(k.shape[1]):
            w = k[u, v]
            if w != 0.0:
                out += w * padded[u : u + m, v : v + n]
    return out


def _check_pair(gx: np.ndarray, gy: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    gx = np.asarray(gx, dtype=np.float64)
    gy = np.asarray(gy, dtype=np.float64)
    if gx.shape != gy.shape:
        raise DimensionError(f"gradient shapes differ: {gx.shape} vs {gy.shape}")
    return gx, gy


def gradient_magnitude(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Pointwise sqrt(gx^2 + gy^2)."""
    gx, gy = _check_pair(gx, gy)
    return np.hypot(gx, gy)


def gradient_direction(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Quadrant-blind gradient angle in degrees, shifted into [0, 180].

    gx == 0 is handled explicitly: 180 for gy > 0, 0 for gy < 0, and 90
    (range midpoint) when both components vanish.
    """
    gx, gy = _check_pair(gx, gy)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        theta = np.degrees(np.arctan(gy / gx))
    zero_gx = gx == 0.0
    theta = np.where(zero_gx & (gy > 0.0), 90.0, theta)
    theta = np.where(zero_gx & (gy < 0.0), -90.0, theta)
    theta = np.where(zero_gx & (gy == 0.0), 0.0, theta)
    # Guard against 1-ulp excursions from arctan on huge ratios.
    return np.clip(theta, -90.0, 90.0) + 90.0


def gradient_channels(img: np.ndarray, kernel: Kernel) -> tuple[np.ndarray, np.ndarray]:
    """Magnitude and normalized-direction images for one gray image."""
    gx = convolve(img, kernel.kx)
    gy = convolve(img, kernel.ky)
    return gradient_magnitude(gx, gy), gradient_direction(gx, gy)
