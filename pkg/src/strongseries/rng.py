"""Portable deterministic pseudo-random source for all randomized suites.

The generator is splitmix-style on 64-bit state.  Update function, with every
operation taken mod 2**64::

    state = state + 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Identical seeds yield identical streams on every platform, so every sampled
case in a report can be regenerated from the seed alone.  Bounded draws use
plain modulo reduction; at desk scale (bounds far below 2**64) the bias is
negligible and the mapping stays portable.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform draw from [0, n)."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform draw from the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def chance(self, num: int, den: int) -> bool:
        """True with probability num/den."""
        return self.below(den) < num

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.below(len(seq))]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), in increasing order."""
        if k > n:
            raise ValueError("sample larger than population")
        picked: set[int] = set()
        while len(picked) < k:
            picked.add(self.below(n))
        return sorted(picked)


def fnv1a64(text: str) -> int:
    """Stable 64-bit FNV-1a hash, used to derive per-suite substreams."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & _MASK64
    return h


def substream(seed: int, label: str) -> SplitMix64:
    """Independent stream for one named suite; stable across runs."""
    return SplitMix64((seed ^ fnv1a64(label)) & _MASK64)
