"""Deterministic random number generation.

Everything randomized in this package (pixel selection schedules, noise
perturbations) is driven by SplitMix64 so that identical seeds produce
bit-identical results on every platform and in every language that follows
the same conventions:

* SplitMix64 state update ``state += 0x9E3779B97F4A7C15`` followed by the
  standard two-multiply finalizer.
* Fisher-Yates shuffles walk ``i = n-1 .. 1`` consuming one 64-bit draw per
  step, with ``j = draw % (i + 1)``.
* Uniforms take the top 53 bits: ``(draw >> 11) * 2**-53``.
* Gaussians come from the Box-Muller transform; each pair of outputs
  consumes two consecutive draws (``u1`` first, ``u2`` second) with ``u1``
  shifted into (0, 1] so the logarithm is always finite.

SplitMix64 is counter-based (the i-th output is a pure function of
``seed + i * gamma``), which is what makes the vectorized block generators
below exactly equal to repeated scalar ``next_u64`` calls.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar SplitMix64 stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def next_unit(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via modulo reduction."""
        return self.next_u64() % bound


def u64_block(seed: int, count: int) -> np.ndarray:
    """The first `count` outputs of SplitMix64(seed), as a uint64 array.

    Exactly equal to `count` sequential :meth:`SplitMix64.next_u64` calls.
    """
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + idx * np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def unit_block(seed: int, count: int) -> np.ndarray:
    """`count` uniform floats in [0, 1)."""
    return (u64_block(seed, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def gaussian_block(seed: int, count: int) -> np.ndarray:
    """`count` standard normal floats via Box-Muller.

    Draws are consumed in pairs; for odd `count` the final sine output is
    discarded.
    """
    pairs = (count + 1) // 2
    raw = u64_block(seed, 2 * pairs)
    u1 = ((raw[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    u2 = (raw[1::2] >> np.uint64(11)).astype(np.float64) * 2.0**-53
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = (2.0 * np.pi) * u2
    out = np.empty(2 * pairs, dtype=np.float64)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:count]


def shuffled_indices(n: int, seed: int) -> np.ndarray:
    """Fisher-Yates permutation of [0, n) driven by SplitMix64(seed)."""
    perm = np.arange(n, dtype=np.int32)
    if n < 2:
        return perm
    draws = u64_block(seed, n - 1)
    buf = perm.tolist()
    for t, i in enumerate(range(n - 1, 0, -1)):
        j = int(draws[t]) % (i + 1)
        buf[i], buf[j] = buf[j], buf[i]
    return np.asarray(buf, dtype=np.int32)


def derive_seed(*parts: int) -> int:
    """Fold integers into one 64-bit seed for an independent substream."""
    state = _GAMMA
    for part in parts:
        state = mix64((state + (int(part) & _MASK64)) & _MASK64)
    return state
