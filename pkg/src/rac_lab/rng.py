"""Seeded random generator with a fixed, implementation-independent contract.

Sampled searches must be reproducible from a single 64-bit seed regardless of
platform or language, so instead of a library RNG we use the splitmix64
expansion:

    state  <- (state + 0x9E3779B97F4A7C15)  mod 2^64
    z      <- state
    z      <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z      <- (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    output <- z XOR (z >> 31)

Bounded draws reduce the 64-bit output with a plain modulo; for the ranges
used here (at most 2^16) the modulo bias is below 2^-48 and irrelevant next
to every tolerance in play.  Independent streams are derived by seeding with
``seed + k`` for a stream index k, which is the intended use of splitmix64.
"""

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator; see the module docstring for the contract."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n < 1:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0 ** -53
