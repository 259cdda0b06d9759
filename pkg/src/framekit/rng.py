"""Portable seeded shuffling.

Python's :mod:`random` makes no promise about how ``shuffle`` consumes the
generator, so splits and training order would not be reproducible from other
languages. SplitMix64 plus a plain Fisher-Yates loop is small enough to port
anywhere bit-exactly.
"""

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood; constants as in Vigna's reference C)."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be an unsigned integer")
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n


def shuffle(items: list, seed) -> list:
    """Return a Fisher-Yates shuffled copy of ``items``.

    Iterates ``i`` from ``len - 1`` down to 1 and swaps with ``j = below(i + 1)``.
    ``seed`` is an unsigned integer or an existing :class:`SplitMix64`, which
    lets callers draw several shuffles from one stream.
    """
    out = list(items)
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    for i in range(len(out) - 1, 0, -1):
        j = rng.below(i + 1)
        out[i], out[j] = out[j], out[i]
    return out
