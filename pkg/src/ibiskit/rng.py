"""SplitMix64: the single pseudo-random generator used by every randomized routine.

The stream is fully determined by a 64-bit seed and uses only integer
arithmetic, so a seed replays bit-for-bit on any platform and Python version.
Bounded integers are drawn by rejection sampling (no modulo bias).
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import TypeVar

T = TypeVar("T")

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n > 1 << 64:
            # Concatenate words up to n's bit length and reject values >= n.
            bits = n.bit_length()
            words = (bits + 63) // 64
            while True:
                x = 0
                for _ in range(words):
                    x = (x << 64) | self.next_u64()
                x >>= words * 64 - bits
                if x < n:
                    return x
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.randbelow(len(seq))]

    def spawn(self, label: int = 0) -> SplitMix64:
        """An independent child stream; does not disturb the parent's draw sequence."""
        return SplitMix64(self.state ^ ((label + 1) * 0xD1B54A32D192ED03 & _MASK))
