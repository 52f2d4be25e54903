"""Seeded 64-bit generator used by every randomized routine in this package.

The generator identity is part of the external reproducibility contract, so it
is pinned here rather than delegated to platform RNGs:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- ((z xor (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z <- ((z xor (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z xor (z >> 31)

This is the standard splitmix64 construction.  Sign sampling maps the low bit
of each output to {+1, -1} with bit 0 -> +1; membership sampling maps bit 1 ->
"in".  Consumers draw one output per decision, in the documented order
(lexicographic edge order for instance generators, ascending vertex order for
subset sampling), so any implementation of splitmix64 reproduces every
instance and every search trajectory bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass
class SplitMix64:
    """splitmix64 stream seeded with an arbitrary Python int (reduced mod 2^64)."""

    seed: int

    def __post_init__(self) -> None:
        self._state = self.seed & _MASK64

    def next_u64(self) -> int:
        """Next raw 64-bit output."""
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_sign(self) -> int:
        """+1 or -1 from the low bit of the next output (bit 0 -> +1)."""
        return -1 if self.next_u64() & 1 else 1

    def next_bool(self) -> bool:
        """True with probability 1/2 (low bit 1 -> True)."""
        return bool(self.next_u64() & 1)

    def next_unit(self) -> float:
        """Float in [0, 1) built from the top 53 bits of the next output."""
        return (self.next_u64() >> 11) * 2.0**-53
