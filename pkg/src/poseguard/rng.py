"""Seeded pseudo-random generator with a fixed, portable algorithm.

Test weights and synthetic scenarios must reproduce bit-identically from a
seed, in any implementation language, so this module pins the generator to
SplitMix64 (Steele, Lea & Flood, 2014) rather than a platform RNG:

    state   <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z       <- state
    z       <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
    z       <- (z xor (z >> 27)) * 0x94D049BB133111EB  mod 2^64
    output  <- z xor (z >> 31)

Derived values:
  * uniform() = (output >> 11) * 2**-53, a double in [0, 1)
  * uniform(lo, hi) = lo + (hi - lo) * uniform()
  * gauss() draws two uniforms and applies the Box-Muller transform,
    u1 forced away from zero by taking max(u1, 2**-53); the pair's second
    value is cached and returned on the next call.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator; same seed gives the same stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._cached_gauss: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        u = (self.next_u64() >> 11) * 2.0 ** -53
        return lo + (hi - lo) * u

    def gauss(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        if self._cached_gauss is not None:
            z = self._cached_gauss
            self._cached_gauss = None
        else:
            u1 = max(self.uniform(), 2.0 ** -53)
            u2 = self.uniform()
            r = math.sqrt(-2.0 * math.log(u1))
            z = r * math.cos(2.0 * math.pi * u2)
            self._cached_gauss = r * math.sin(2.0 * math.pi * u2)
        return mu + sigma * z
