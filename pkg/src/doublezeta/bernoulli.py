"""Exact Bernoulli numbers in the B_1 = -1/2 convention.

Computed by the recursion B_0 = 1, B_n = -n! * sum_{k<n} B_k / (k!(n-k+1)!).
Note the convention: B_1 = -1/2 (the "first" Bernoulli numbers).  Every
downstream formula in this package assumes it.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["BernoulliCache", "bernoulli_number", "bernoulli_range"]


class BernoulliCache:
    """Append-only cache of B_0, B_1, ... owned by a single task.

    The cache is a value, not global state: independent instances always
    agree entrywise because the recursion is deterministic.
    """

    def __init__(self) -> None:
        self._values: list[Fraction] = [Fraction(1)]

    @property
    def high_water(self) -> int:
        """Largest index computed so far."""
        return len(self._values) - 1

    def get(self, n: int) -> Fraction:
        """B_n, extending the cache through index n if needed."""
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        self._extend(n)
        return self._values[n]

    def _extend(self, n: int) -> None:
        while len(self._values) <= n:
            m = len(self._values)
            if m % 2 == 1 and m >= 3:
                self._values.append(Fraction(0))
                continue
            total = Fraction(0)
            for k, bk in enumerate(self._values):
                if bk:
                    total += Fraction(bk, math.factorial(k) * math.factorial(m - k + 1))
            self._values.append(-math.factorial(m) * total)


def bernoulli_number(n: int, cache: BernoulliCache | None = None) -> Fraction:
    """B_n as an exact rational (B_1 = -1/2 convention)."""
    if cache is None:
        cache = BernoulliCache()
    return cache.get(n)


def bernoulli_range(n_max: int, cache: BernoulliCache | None = None) -> list[Fraction]:
    """B_0 ... B_{n_max} as a list, consistent with bernoulli_number."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if cache is None:
        cache = BernoulliCache()
    cache.get(n_max)
    return [cache.get(i) for i in range(n_max + 1)]
