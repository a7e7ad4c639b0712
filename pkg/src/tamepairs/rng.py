"""SplitMix64: the platform-independent pseudo-random source of the harness.

Every stream is addressed by ``(seed, index, salt)``.  The initial state is

    state = (seed * 0x9E3779B97F4A7C15
             + index * 0xD1B54A32D192ED03
             + salt * 0x8CB92BA72F3D8DD7) mod 2**64

and each draw advances ``state += 0x9E3779B97F4A7C15`` and returns the
SplitMix64 finalizer of the new state.  Bounded integers use rejection on the
top of the 64-bit range so they are unbiased and reproducible in any
language with 64-bit unsigned arithmetic.  ``salt`` strings are mapped
through CRC-32 (``zlib.crc32`` of their UTF-8 bytes).
"""

from __future__ import annotations

import zlib

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def salt_of(salt) -> int:
    if isinstance(salt, str):
        return zlib.crc32(salt.encode("utf-8"))
    return int(salt) & MASK


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int = 0, index: int = 0, salt=0):
        self.state = (
            (seed & MASK) * GOLDEN
            + (index & MASK) * 0xD1B54A32D192ED03
            + salt_of(salt) * 0x8CB92BA72F3D8DD7
        ) & MASK

    def next64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def chance(self, num: int, den: int) -> bool:
        return self.below(den) < num

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items
