"""Sparse distributed feature encoding.

The pipeline for one channel: slice the 8-bit image into bit planes, sum
the bits of each cell's pixels (a cell is W pixel locations drawn by a
seeded shuffle), apply winner-take-all inhibition inside consecutive
groups of X cells, and fuse the per-plane winner bits back into integers
with positional weights (plane 0 = least significant).

Key conventions, all of which are load-bearing for reproducibility:

* A schedule is built from k independent Fisher-Yates shuffles of the
  pixel indices; shuffle r is seeded with ``seed + r``. Each shuffled
  sequence is chopped into consecutive W-sized cells, and the rounds are
  concatenated, so every pixel belongs to exactly k cells.
* The same schedule is reused on every bit plane; cell c means the same W
  pixel locations in each plane, which is what makes per-cell fusion
  meaningful.
* Within a WTA group, every cell equal to the group maximum wins under the
  default ``tie_rule="all"`` (an all-constant group therefore saturates to
  all ones); ``tie_rule="first"`` keeps only the lowest-index winner.
* Multi-channel features concatenate in the fixed order pix, mag, dir.
  Each channel draws its own schedule from a seed offset by a per-channel
  constant, so the channels decorrelate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from . import gradient, imaging
from .errors import ConfigError, DimensionError
from .rng import shuffled_indices

FORMAT_VERSION = 1

CHANNEL_ORDER = ("pix", "mag", "dir")
CHANNEL_SEED_OFFSET = {"pix": 0, "mag": 1_000_000, "dir": 2_000_000}
TIE_RULES = ("all", "first")

_MASK64 = (1 << 64) - 1


def channels_from_name(name: str) -> tuple[str, ...]:
    """Parse a combo name like ``"pixmagdir"`` into an ordered channel tuple."""
    rest = name.strip().lower()
    found = []
    while rest:
        for ch in CHANNEL_ORDER:
            if rest.startswith(ch) and ch not in found:
                found.append(ch)
                rest = rest[len(ch):]
                break
        else:
            raise ConfigError(f"cannot parse channel combination {name!r}")
    if not found:
        raise ConfigError("channel combination is empty")
    return tuple(ch for ch in CHANNEL_ORDER if ch in found)


def combo_name(channels) -> str:
    return "".join(channels)


@dataclass(frozen=True)
class EncoderConfig:
    """Feature-extraction parameters.

    W: pixels per cell. X: cells per winner-take-all group. k: how many
    cells each pixel feeds (degree of overlap). P: bit depth.
    """

    W: int = 16
    X: int = 4
    k: int = 2
    P: int = 8
    channels: tuple[str, ...] = ("pix", "mag", "dir")
    gradient_mask: str = "prewitt"
    seed: int = 0
    tie_rule: str = "all"

    def __post_init__(self):
        channels = self.channels
        if isinstance(channels, str):
            channels = channels_from_name(channels)
        else:
            channels = tuple(channels)
            if not channels:
                raise ConfigError("at least one channel is required")
            bad = [c for c in channels if c not in CHANNEL_ORDER]
            if bad:
                raise ConfigError(f"unknown channels {bad}; expected subset of {CHANNEL_ORDER}")
            channels = tuple(c for c in CHANNEL_ORDER if c in channels)
        object.__setattr__(self, "channels", channels)
        if self.W < 2:
            raise ConfigError(f"W must be >= 2, got {self.W}")
        if self.X < 2:
            raise ConfigError(f"X must be >= 2, got {self.X}")
        if self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k}")
        if not 1 <= self.P <= 8:
            raise ConfigError(f"P must be in [1, 8], got {self.P}")
        if self.gradient_mask not in gradient.KERNELS:
            raise ConfigError(
                f"unknown gradient mask {self.gradient_mask!r}; "
                f"expected one of {tuple(gradient.KERNELS)}"
            )
        if self.tie_rule not in TIE_RULES:
            raise ConfigError(f"tie_rule must be one of {TIE_RULES}, got {self.tie_rule!r}")

    def with_seed(self, seed: int) -> "EncoderConfig":
        return replace(self, seed=seed)


@dataclass(eq=False)
class SelectionSchedule:
    """Deterministic assignment of W pixel indices to each of C cells."""

    seed: int
    m: int
    n: int
    W: int
    k: int
    cells: np.ndarray  # (C, W) int32 flat pixel indices

    @property
    def num_cells(self) -> int:
        return self.cells.shape[0]


@dataclass(eq=False)
class FeatureVector:
    """Fused integer feature values, one or more channels concatenated."""

    values: np.ndarray  # (C * num_channels,) uint8
    channels: tuple[str, ...]
    cells_per_channel: int
    fingerprint: str

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.uint8)
        if self.values.shape != (self.cells_per_channel * len(self.channels),):
            raise DimensionError(
                f"feature length {self.values.shape} does not match "
                f"{len(self.channels)} channel(s) of {self.cells_per_channel} cells"
            )


def fingerprint_dict(config: EncoderConfig, m: int, n: int) -> dict:
    """The full comparability record for features encoded under `config`."""
    return {
        "version": FORMAT_VERSION,
        "W": config.W,
        "X": config.X,
        "k": config.k,
        "P": config.P,
        "channels": list(config.channels),
        "gradient_mask": config.gradient_mask,
        "seed": int(config.seed) & _MASK64,
        "m": m,
        "n": n,
        "tie_rule": config.tie_rule,
    }


def fingerprint_json(config: EncoderConfig, m: int, n: int) -> str:
    return json.dumps(fingerprint_dict(config, m, n), sort_keys=True, separators=(",", ":"))


def build_schedule(m: int, n: int, W: int, k: int, seed: int) -> SelectionSchedule:
    """k seeded shuffles of the pixel indices, chopped into W-sized cells."""
    total = m * n
    if W < 1 or total % W != 0:
        raise ConfigError(f"window size {W} must divide the pixel count {total}")
    if k < 1:
        raise ConfigError(f"degree of overlap must be a positive integer, got {k}")
    rounds = [
        shuffled_indices(total, (int(seed) + r) & _MASK64).reshape(-1, W)
        for r in range(k)
    ]
    return SelectionSchedule(seed=int(seed) & _MASK64, m=m, n=n, W=W, k=k,
                             cells=np.concatenate(rounds, axis=0))


def build_schedules(config: EncoderConfig, m: int, n: int) -> dict[str, SelectionSchedule]:
    """One independent schedule per configured channel."""
    return {
        ch: build_schedule(m, n, config.W, config.k,
                           (int(config.seed) + CHANNEL_SEED_OFFSET[ch]) & _MASK64)
        for ch in config.channels
    }


def cell_sums(plane: np.ndarray, schedule: SelectionSchedule) -> np.ndarray:
    """Sum of the W plane bits at each cell's pixel locations."""
    plane = np.asarray(plane)
    if plane.shape != (schedule.m, schedule.n):
        raise DimensionError(
            f"plane shape {plane.shape} does not match schedule {(schedule.m, schedule.n)}"
        )
    return plane.ravel()[schedule.cells].sum(axis=1, dtype=np.int32)


def winner_take_all(sums, X: int, tie_rule: str = "all") -> np.ndarray:
    """Binarize consecutive groups of X values: group maxima become 1.

    With ``tie_rule="all"`` every element equal to the group maximum wins;
    with ``"first"`` only the lowest-index one does.
    """
    sums = np.asarray(sums)
    if sums.ndim != 1:
        raise DimensionError(f"expected a 1D sequence, got shape {sums.shape}")
    if X < 1 or sums.size % X != 0:
        raise ConfigError(f"group size {X} must divide the sequence length {sums.size}")
    if tie_rule not in TIE_RULES:
        raise ConfigError(f"tie_rule must be one of {TIE_RULES}, got {tie_rule!r}")
    groups = sums.reshape(-1, X)
    if tie_rule == "all":
        winners = groups == groups.max(axis=1, keepdims=True)
    else:
        winners = np.zeros(groups.shape, dtype=bool)
        winners[np.arange(groups.shape[0]), groups.argmax(axis=1)] = True
    return winners.reshape(-1).astype(np.uint8)


def fuse_planes(plane_bits) -> np.ndarray:
    """Combine P binary sequences into integers; sequence p weighs 2**p."""
    try:
        stack = np.asarray(plane_bits)
    except ValueError:
        raise DimensionError("plane sequences have differing lengths") from None
    if stack.ndim != 2:
        raise DimensionError(f"expected P sequences of equal length, got shape {stack.shape}")
    depth = stack.shape[0]
    if depth > 8:
        raise ValueError(f"at most 8 planes supported, got {depth}")
    weights = (1 << np.arange(depth, dtype=np.int32))
    return (stack.astype(np.int32) * weights[:, None]).sum(axis=0).astype(np.uint8)


def encode_channel(img: np.ndarray, config: EncoderConfig,
                   schedule: SelectionSchedule) -> np.ndarray:
    """Run the full per-channel pipeline; returns C fused values.

    Equivalent to bit-plane slicing followed by per-plane cell_sums,
    winner_take_all, and fuse_planes, but gathers each cell's pixels once
    and extracts the plane bits in place.
    """
    arr = imaging.as_gray(img)
    if arr.shape != (schedule.m, schedule.n):
        raise DimensionError(
            f"image shape {arr.shape} does not match schedule {(schedule.m, schedule.n)}"
        )
    if arr.size and arr.max() > (1 << config.P) - 1:
        raise ValueError(f"pixel values exceed {config.P}-bit range")
    num_cells = schedule.num_cells
    if config.X < 1 or num_cells % config.X != 0:
        raise ConfigError(f"group size {config.X} must divide the cell count {num_cells}")
    gathered = arr.ravel()[schedule.cells]  # (C, W) uint8
    fused = np.zeros(num_cells, dtype=np.int32)
    for p in range(config.P):
        sums = ((gathered >> p) & 1).sum(axis=1, dtype=np.int32)
        winners = winner_take_all(sums, config.X, config.tie_rule)
        fused += winners.astype(np.int32) << p
    return fused.astype(np.uint8)


def encode(img: np.ndarray, config: EncoderConfig,
           schedules: dict[str, SelectionSchedule] | None = None) -> FeatureVector:
    """Encode one image into its configured channel combination."""
    arr = imaging.as_gray(img)
    m, n = arr.shape
    if schedules is None:
        schedules = build_schedules(config, m, n)
    missing = [ch for ch in config.channels if ch not in schedules]
    if missing:
        raise ConfigError(f"no schedule provided for channel(s) {missing}")

    grad = None
    parts = []
    for ch in config.channels:
        if ch == "pix":
            chan_img = arr
        else:
            if grad is None:
                grad = gradient.gradient_channels(arr, gradient.KERNELS[config.gradient_mask])
            if ch == "mag":
                chan_img = imaging.quantize(grad[0], "minmax_0_255")
            else:
                chan_img = imaging.quantize(grad[1], "direction_degrees")
        parts.append(encode_channel(chan_img, config, schedules[ch]))
    cells = parts[0].shape[0]
    return FeatureVector(
        values=np.concatenate(parts),
        channels=config.channels,
        cells_per_channel=cells,
        fingerprint=fingerprint_json(config, m, n),
    )
