"""Binomials and lexicographic subset enumeration."""

from __future__ import annotations

import math
from itertools import combinations


def binomial(n: int, k: int) -> int:
    """Exact ``C(n, k)``; zero when ``k > n`` or ``k < 0``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def ksubsets(v: int, k: int) -> list[tuple[int, ...]]:
    """All ``k``-subsets of ``{1..v}`` as sorted tuples in lexicographic order.

    Out-of-range ``k`` yields an empty list, mirroring ``binomial``.
    """
    if not 0 <= k <= v:
        return []
    return list(combinations(range(1, v + 1), k))


def subset_rank(subset, v: int) -> int:
    """0-based position of ``subset`` in ``ksubsets(v, len(subset))``."""
    items = sorted(subset)
    k = len(items)
    rank = 0
    prev = 0
    for i, x in enumerate(items):
        for y in range(prev + 1, x):
            rank += binomial(v - y, k - i - 1)
        prev = x
    return rank
