"""Binomial convolution identities and falling-factorial expansions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .combinatorics import binom, falling
from .errors import SumMismatch


def bin_sum(a: int, b: int, l: int, start: int = 0) -> int:
    return sum(binom(a, i) * binom(b, l - i) for i in range(start, l + 1))


def check_bin_sum(a: int, b: int, l: int, start: int = 0) -> bool:
    """Vandermonde: sum_i binom(a, i) binom(b, l-i) = binom(a+b, l)."""
    return bin_sum(a, b, l, start) == binom(a + b, l)


def contingency_tables(xs: Sequence[int], ys: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Non-negative integer matrices with row sums xs and column sums ys."""
    if sum(xs) != sum(ys):
        raise SumMismatch(f"row sums {sum(xs)} != column sums {sum(ys)}")
    m, n = len(xs), len(ys)
    if m == 0:
        yield ()
        return

    def rows(i: int, remaining: Tuple[int, ...]):
        if i == m - 1:
            if sum(remaining) == xs[i]:
                yield (remaining,)
            return
        for row in _row_choices(xs[i], remaining):
            rest = tuple(r - a for r, a in zip(remaining, row))
            for tail in rows(i + 1, rest):
                yield (row,) + tail

    yield from rows(0, tuple(ys))


def _row_choices(total: int, caps: Tuple[int, ...]):
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _row_choices(total - first, caps[1:]):
            yield (first,) + rest


def check_rec(xs: Sequence[int], ys: Sequence[int]) -> bool:
    """sum over tables of 1/prod a_ij! equals A!/(prod x_i! prod y_j!)."""
    if any(v < 0 for v in list(xs) + list(ys)):
        raise ValueError("margins must be non-negative")
    lhs = Fraction(0)
    for table in contingency_tables(xs, ys):
        den = 1
        for row in table:
            for a in row:
                den *= factorial(a)
        lhs += Fraction(1, den)
    A = sum(xs)
    den = 1
    for v in list(xs) + list(ys):
        den *= factorial(v)
    return lhs == Fraction(factorial(A), den)


# ---------------------------------------------------------------------------
# products of binomials


def nonempty_subsets(r: int) -> List[FrozenSet[int]]:
    return [frozenset(c) for k in range(1, r + 1) for c in combinations(range(1, r + 1), k)]


@dataclass(frozen=True)
class SubsetTuple:
    """s(U) for every non-empty U of [r]."""

    r: int
    values: Tuple[Tuple[FrozenSet[int], int], ...]

    def __post_init__(self):
        keys = [u for u, _ in self.values]
        if sorted(map(sorted, keys)) != sorted(map(sorted, nonempty_subsets(self.r))):
            raise ValueError("domain must be exactly the non-empty subsets of [r]")

    def as_dict(self) -> Dict[FrozenSet[int], int]:
        return dict(self.values)

    def total(self) -> int:
        return sum(v for _, v in self.values)

    def marginal(self, i: int) -> int:
        return sum(v for u, v in self.values if i in u)


def subset_tuples(nu: Sequence[int]) -> Iterator[SubsetTuple]:
    """All s with sum_{U containing i} s(U) = nu(i) for every i; k is s.total()."""
    r = len(nu)
    subs = nonempty_subsets(r)
    caps = [min(nu[i - 1] for i in u) for u in subs]
    if any(v < 0 for v in nu):
        return
    for vals in product(*(range(c + 1) for c in caps)):
        marg = [0] * r
        for u, v in zip(subs, vals):
            for i in u:
                marg[i - 1] += v
        if marg == list(nu):
            yield SubsetTuple(r, tuple(zip(subs, vals)))


def t_su_lhs(d, nu: Sequence[int]):
    total = Fraction(0)
    for s in subset_tuples(nu):
        den = 1
        for _, v in s.values:
            den *= factorial(v)
        total = total + falling(d, s.total()) * Fraction(1, den)
    return total


def binom_general(d, k: int):
    """binom(d, k) = (d)_k / k! for symbolic d; the integer rule for integer d."""
    if isinstance(d, int):
        return binom(d, k) if k >= 0 else 0
    if k < 0:
        return Fraction(0)
    return falling(d, k) * Fraction(1, factorial(k))


def check_t_su(d, nu: Sequence[int]) -> bool:
    if len(nu) < 1:
        raise ValueError("need r >= 1")
    rhs = 1
    for v in nu:
        rhs = rhs * binom_general(d, v)
    return t_su_lhs(d, nu) == rhs


# ---------------------------------------------------------------------------
# falling-factorial expansions


def bounded_multisets(m: int, n: int) -> Iterator[Tuple[int, ...]]:
    """L(m, n): non-decreasing (lambda(n+1), ..., lambda(m)) with 1 <= lambda(i) <= i."""
    if n > m:
        yield ()
        return

    def rec(i: int, low: int):
        if i > m:
            yield ()
            return
        for v in range(low, i + 1):
            for rest in rec(i + 1, v):
                yield (v,) + rest

    yield from rec(n + 1, 1)


def mult(lam: Sequence[int], i: int) -> int:
    return sum(1 for x in lam if x == i)


def c_m(m: int, lam: Sequence[int]) -> int:
    out = 1
    for i in range(1, m + 1):
        above = sum(mult(lam, j) for j in range(i + 1, m + 1))
        out *= binom(m - i + 1 - above, mult(lam, i))
    return out


def s_exp_sides(m: int, s: Sequence, d):
    if len(s) < m:
        raise ValueError("need m values s_1..s_m")
    lhs = Fraction(1)
    for i in range(1, m + 1):
        lhs = lhs * (d - i + 1 + sum(s[:i], Fraction(0)))
    rhs = Fraction(0)
    for i in range(m + 1):
        inner = Fraction(0)
        for lam in bounded_multisets(m, i):
            term = Fraction(c_m(m, lam))
            for j in range(1, m + 1):
                term = term * falling(s[j - 1], mult(lam, j))
            inner = inner + term
        rhs = rhs + falling(d, i) * inner
    return lhs, rhs


def check_s_exp(m: int, s: Sequence, d) -> bool:
    lhs, rhs = s_exp_sides(m, s, d)
    return lhs == rhs


def x_of(U: Sequence[int], x: Sequence):
    """x(U) = prod_i (x_{U(i)} - i + 1) with U listed in increasing order."""
    out = Fraction(1)
    for i, u in enumerate(sorted(U), start=1):
        out = out * (x[u - 1] - i + 1)
    return out


def s_exp_2_sides(r: int, x: Sequence, y):
    lhs = Fraction(1)
    for i in range(1, r + 1):
        lhs = lhs * (y + x[i - 1] - i + 1)
    rhs = Fraction(0)
    for i in range(r + 1):
        inner = sum((x_of(U, x) for U in combinations(range(1, r + 1), r - i)), Fraction(0))
        rhs = rhs + falling(y, i) * inner
    return lhs, rhs


def check_s_exp_2(r: int, x: Sequence, y) -> bool:
    lhs, rhs = s_exp_2_sides(r, x, y)
    return lhs == rhs
