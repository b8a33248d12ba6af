"""Deterministic 64-bit randomness for every randomized construction.

The generator is SplitMix64 (Steele/Lea/Flood), fixed here by name and
constants so that runs replicate bit-for-bit across platforms and can be
reimplemented in any language.  State update adds the golden-gamma constant;
the output mix is the standard two-multiply finalizer.
"""

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
TWO64 = 1 << 64


def mix64(z: int) -> int:
    """SplitMix64 output function on a 64-bit word."""
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def bernoulli_threshold(p: float) -> int:
    """Integer threshold t such that a uniform u64 draw is a success iff draw < t.

    Multiplying a float by 2**64 only shifts the exponent, so the conversion
    is exact and portable for any p in [0, 1].
    """
    if p <= 0.0:
        return 0
    if p >= 1.0:
        return TWO64
    return int(p * 18446744073709551616.0)


class SplitMix64:
    """Sequential SplitMix64 stream seeded with a 64-bit integer."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        return mix64(self._state)

    def bernoulli_mask(self, n: int, threshold: int) -> int:
        """Bitmask over n vertices, bit v set iff the v-th draw is below threshold.

        Consumes exactly n draws in vertex order; callers document their
        consumption order in terms of this primitive.
        """
        mask = 0
        for v in range(n):
            if self.next_u64() < threshold:
                mask |= 1 << v
        return mask
