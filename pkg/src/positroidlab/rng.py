"""SplitMix64: a tiny, fully specified PRNG so sampled points are
reproducible byte-for-byte across platforms and Python versions."""
from __future__ import annotations

from fractions import Fraction

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (inclusive)."""
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def positive_rational(self, top: int = 9) -> Fraction:
        return Fraction(self.randint(1, top), self.randint(1, top))

    def rational(self, top: int = 9) -> Fraction:
        return Fraction(self.randint(-top, top), self.randint(1, top))

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def spawn(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())
