"""Seeded sampling with portable integer semantics.

The generator is SplitMix64 (Steele, Lea & Flood 2014): every step is plain
64-bit wrap-around arithmetic, so a given seed yields the same stream in any
language. Bounded draws use rejection to stay unbiased.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterator, Sequence, TypeVar

GENERATOR_NAME = "splitmix64"

_MASK64 = (1 << 64) - 1

T = TypeVar("T")


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.below(len(seq))]

    def sample(self, seq: Sequence[T], k: int) -> list[T]:
        """``k`` distinct items of ``seq`` by partial Fisher-Yates, in draw order."""
        pool = list(seq)
        if k > len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


@dataclass(frozen=True)
class Mode:
    """Search mode: exhaustive (``samples is None``) or ``samples`` seeded draws."""

    samples: int | None = None
    seed: int = 0

    @property
    def exhaustive(self) -> bool:
        return self.samples is None

    def rng(self) -> SplitMix64:
        return SplitMix64(self.seed)


EXHAUSTIVE = Mode()


def sample(n: int, seed: int = 0) -> Mode:
    if n < 0:
        raise ValueError("sample size must be non-negative")
    return Mode(samples=n, seed=seed)


def draw_unique(
    rng: SplitMix64,
    n: int,
    draw: Callable[[SplitMix64], Hashable | None],
    max_attempts: int | None = None,
) -> Iterator:
    """Yield up to ``n`` distinct non-None results of ``draw``.

    Draws returning None are rejections. Stops early once ``max_attempts``
    draws have been made, so small configuration spaces terminate.
    """
    if max_attempts is None:
        max_attempts = 50 * n + 1000
    seen = set()
    attempts = 0
    while len(seen) < n and attempts < max_attempts:
        attempts += 1
        item = draw(rng)
        if item is None or item in seen:
            continue
        seen.add(item)
        yield item
