"""SplitMix64 generator.

Pure-Python 64-bit arithmetic so that a seed written in a config file
produces the same stream on every platform.
"""

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / 9007199254740992.0

    def next_symmetric(self) -> float:
        """Uniform double in [-1, 1)."""
        return 2.0 * self.next_unit() - 1.0

    def symmetric(self, count: int) -> list[float]:
        return [self.next_symmetric() for _ in range(count)]
