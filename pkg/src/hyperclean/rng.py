"""Seedable, splittable random bits (splitmix64).

All randomized routines in this package draw from splitmix64 so that runs
replay bit-exactly on any platform and in either kernel backend.  The
algorithm identifier recorded in certificates and transcripts is
``"splitmix64"``.  Trial ``i`` of a batch uses the ``(i+1)``-th raw output
of a generator seeded with the master seed as its own seed, which is what
:func:`derive_seed` computes.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

RNG_ALGORITHM = "splitmix64"

_INV53 = 2.0 ** -53


def mix64(z: int) -> int:
    """splitmix64 output function (a bijection on 64-bit words)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1E3957D1) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Independent seed for substream `index` of master `seed`."""
    return mix64((seed + (index + 1) * GOLDEN) & MASK64)


class SplitMix64:
    """splitmix64 stream; the state advances by the golden gamma per draw."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def next_double(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * _INV53

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def shuffle(self, seq: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.next_below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
