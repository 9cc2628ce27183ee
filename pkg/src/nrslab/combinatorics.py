"""Integer compositions and small counting helpers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, List


class CompositionPos(tuple):
    """Ordered tuple of positive parts; the empty tuple composes 0."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"positive composition has a part < 1: {parts}")
        return super().__new__(cls, parts)

    @property
    def target(self) -> int:
        return sum(self)


class CompositionNN(tuple):
    """Fixed-length tuple of non-negative parts."""

    def __new__(cls, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"non-negative composition has a negative part: {parts}")
        return super().__new__(cls, parts)

    @property
    def target(self) -> int:
        return sum(self)


@lru_cache(maxsize=None)
def _compositions_pos(n: int) -> tuple:
    if n == 0:
        return (CompositionPos(),)
    out = []
    # Each of the n-1 gaps between unit cells is either a cut or not.
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            edges = (0,) + cuts + (n,)
            out.append(CompositionPos(edges[i + 1] - edges[i] for i in range(len(edges) - 1)))
    return tuple(out)


def compositions_pos(n: int) -> List[CompositionPos]:
    """All compositions of ``n`` into positive parts, any number of parts."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_compositions_pos(n))


def _iter_nn(h: int, r: int, cap: int | None) -> Iterator[tuple]:
    if r == 1:
        if cap is None or h <= cap:
            yield (h,)
        return
    top = h if cap is None else min(h, cap)
    for first in range(top + 1):
        for rest in _iter_nn(h - first, r - 1, cap):
            yield (first,) + rest


def compositions_nn(h: int, r: int, max_part: int | None = None) -> List[CompositionNN]:
    """Length-``r`` tuples of non-negative integers summing to ``h``.

    ``max_part`` optionally caps every part; the uncapped count is
    ``comb(h + r - 1, r - 1)``.
    """
    if h < 0 or r < 1:
        raise ValueError("need h >= 0 and r >= 1")
    return [CompositionNN(c) for c in _iter_nn(h, r, max_part)]


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def falling(x, k: int):
    """Falling factorial (x)_k = x(x-1)...(x-k+1); works for ring elements."""
    out = 1
    for i in range(k):
        out = out * (x - i)
    return out


def inversions(seq) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])

