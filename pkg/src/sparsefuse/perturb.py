"""Test-time image degradations for the robustness experiments.

Noise parameterizations follow the common unit-intensity conventions:
variances apply to the image rescaled to [0, 1], salt-and-pepper density
is the per-pixel replacement probability, and speckle is multiplicative
zero-mean uniform noise of the given variance. Zero-strength parameters
are exact identities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imaging import as_gray, bilinear_resize, round_half_up
from .rng import gaussian_block, u64_block, unit_block

PERTURBATION_KINDS = ("gaussian", "salt_pepper", "speckle", "translate", "scale")


@dataclass(frozen=True)
class PerturbationSpec:
    """One degradation: kind plus its parameter.

    `amount` is the variance for gaussian/speckle, the density for
    salt_pepper, and the factor for scale; translate uses (dx, dy).
    """

    kind: str
    amount: float = 0.0
    dx: int = 0
    dy: int = 0
    noise_seed: int = 0

    def __post_init__(self):
        if self.kind not in PERTURBATION_KINDS:
            raise ValueError(
                f"unknown perturbation {self.kind!r}; expected one of {PERTURBATION_KINDS}"
            )
        if self.kind in ("gaussian", "speckle") and self.amount < 0:
            raise ValueError("variance must be >= 0")
        if self.kind == "salt_pepper" and not 0.0 <= self.amount <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if self.kind == "scale" and self.amount <= 0:
            raise ValueError("scale factor must be > 0")


def _requantize(unit: np.ndarray) -> np.ndarray:
    return round_half_up(np.clip(unit, 0.0, 1.0) * 255.0).astype(np.uint8)


def gaussian_noise(img, variance: float, seed: int) -> np.ndarray:
    """Additive zero-mean Gaussian noise of `variance` on unit intensity."""
    arr = as_gray(img)
    if variance < 0:
        raise ValueError("variance must be >= 0")
    if variance == 0:
        return arr.copy()
    noise = gaussian_block(seed, arr.size).reshape(arr.shape) * np.sqrt(variance)
    return _requantize(arr / 255.0 + noise)


def salt_pepper(img, density: float, seed: int) -> np.ndarray:
    """Replace each pixel with probability `density` by 0 or 255, equally."""
    arr = as_gray(img)
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    if density == 0:
        return arr.copy()
    draws = u64_block(seed, 2 * arr.size)
    unit = (draws >> np.uint64(11)).astype(np.float64) * 2.0**-53
    replace = (unit[0::2] < density).reshape(arr.shape)
    salt = (unit[1::2] < 0.5).reshape(arr.shape)
    out = arr.copy()
    out[replace & salt] = 255
    out[replace & ~salt] = 0
    return out


def speckle(img, variance: float, seed: int) -> np.ndarray:
    """Multiplicative uniform noise: J = I + n*I with Var(n) = `variance`."""
    arr = as_gray(img)
    if variance < 0:
        raise ValueError("variance must be >= 0")
    if variance == 0:
        return arr.copy()
    # Zero-mean uniform over [-a, a) has variance a^2/3.
    half_width = np.sqrt(3.0 * variance)
    noise = (2.0 * unit_block(seed, arr.size) - 1.0).reshape(arr.shape) * half_width
    unit = arr / 255.0
    return _requantize(unit + noise * unit)


def translate(img, dx: int, dy: int) -> np.ndarray:
    """Shift content by dx columns and dy rows; vacated pixels become 0."""
    arr = as_gray(img)
    m, n = arr.shape
    if abs(dx) >= n or abs(dy) >= m:
        raise ValueError(f"shift ({dx}, {dy}) exceeds image size {(m, n)}")
    if dx == 0 and dy == 0:
        return arr.copy()
    out = np.zeros_like(arr)
    src_rows = slice(max(0, -dy), m - max(0, dy))
    src_cols = slice(max(0, -dx), n - max(0, dx))
    dst_rows = slice(max(0, dy), m - max(0, -dy))
    dst_cols = slice(max(0, dx), n - max(0, -dx))
    out[dst_rows, dst_cols] = arr[src_rows, src_cols]
    return out


def scale(img, factor: float) -> np.ndarray:
    """Resize about the center by `factor`, then crop or zero-pad back.

    Enlarged images are center-cropped; shrunk images sit centered on a
    black canvas of the original size.
    """
    arr = as_gray(img)
    if factor <= 0:
        raise ValueError("scale factor must be > 0")
    if factor == 1.0:
        return arr.copy()
    m, n = arr.shape
    new_m = max(1, int(round_half_up(np.float64(m * factor))))
    new_n = max(1, int(round_half_up(np.float64(n * factor))))
    resized = np.clip(round_half_up(bilinear_resize(arr, new_m, new_n)), 0, 255).astype(np.uint8)
    out = np.zeros((m, n), dtype=np.uint8)
    row_off = (new_m - m) // 2
    col_off = (new_n - n) // 2
    if row_off >= 0:
        src_rows, dst_rows = slice(row_off, row_off + m), slice(0, m)
    else:
        src_rows, dst_rows = slice(0, new_m), slice(-row_off, -row_off + new_m)
    if col_off >= 0:
        src_cols, dst_cols = slice(col_off, col_off + n), slice(0, n)
    else:
        src_cols, dst_cols = slice(0, new_n), slice(-col_off, -col_off + new_n)
    out[dst_rows, dst_cols] = resized[src_rows, src_cols]
    return out


def apply_spec(img, spec: PerturbationSpec, seed: int | None = None) -> np.ndarray:
    """Apply one perturbation; `seed` overrides the spec's noise seed."""
    noise_seed = spec.noise_seed if seed is None else seed
    if spec.kind == "gaussian":
        return gaussian_noise(img, spec.amount, noise_seed)
    if spec.kind == "salt_pepper":
        return salt_pepper(img, spec.amount, noise_seed)
    if spec.kind == "speckle":
        return speckle(img, spec.amount, noise_seed)
    if spec.kind == "translate":
        return translate(img, spec.dx, spec.dy)
    return scale(img, spec.amount)


def parse_spec(text: str, noise_seed: int = 0) -> PerturbationSpec:
    """Parse a CLI-style spec like ``gaussian=0.01`` or ``translate=2,-1``."""
    kind, sep, raw = text.partition("=")
    kind = kind.strip().lower()
    if kind not in PERTURBATION_KINDS:
        raise ValueError(
            f"unknown perturbation {kind!r}; expected one of {PERTURBATION_KINDS}"
        )
    if not sep:
        raise ValueError(f"perturbation {text!r} is missing its '=value' part")
    if kind == "translate":
        pieces = [p.strip() for p in raw.split(",")]
        if len(pieces) != 2:
            raise ValueError("translate takes two values: dx,dy")
        return PerturbationSpec(kind, dx=int(pieces[0]), dy=int(pieces[1]),
                                noise_seed=noise_seed)
    return PerturbationSpec(kind, amount=float(raw), noise_seed=noise_seed)


def spec_to_json(spec: PerturbationSpec) -> dict:
    doc = {"kind": spec.kind, "noise_seed": spec.noise_seed}
    if spec.kind == "translate":
        doc["dx"] = spec.dx
        doc["dy"] = spec.dy
    else:
        doc["amount"] = spec.amount
    return doc


def spec_from_json(doc: dict) -> PerturbationSpec:
    kind = doc["kind"]
    amount = doc.get("amount")
    if amount is None:
        # Accept the per-kind aliases used in hand-written config files.
        for alias in ("variance", "density", "factor"):
            if alias in doc:
                amount = doc[alias]
                break
    return PerturbationSpec(
        kind=kind,
        amount=float(amount) if amount is not None else (1.0 if kind == "scale" else 0.0),
        dx=int(doc.get("dx", 0)),
        dy=int(doc.get("dy", 0)),
        noise_seed=int(doc.get("noise_seed", 0)),
    )
