"""Directed simple graphs: weight sums and the size-bounded sequence encoding."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import FrozenSet, Iterator, List, Sequence, Tuple

from .combinatorics import compositions_nn
from .errors import NotInB
from .lgv import signed_vd_count
from .symmetric import e_comp


@dataclass(frozen=True)
class DsgMatrix:
    """Adjacency matrix with zero diagonal and no 2-cycles; vertices are 1-based in the API."""

    bits: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        r = len(self.bits)
        for i in range(r):
            if len(self.bits[i]) != r:
                raise ValueError("adjacency matrix must be square")
            if self.bits[i][i]:
                raise ValueError("loops are not allowed")
            for j in range(r):
                if self.bits[i][j] not in (0, 1):
                    raise ValueError("entries must be 0 or 1")
                if self.bits[i][j] and self.bits[j][i]:
                    raise ValueError("2-cycles are not allowed")

    @property
    def r(self) -> int:
        return len(self.bits)

    def edges(self) -> List[Tuple[int, int]]:
        return [(i + 1, j + 1) for i in range(self.r) for j in range(self.r) if self.bits[i][j]]

    def leading(self, k: int) -> "DsgMatrix":
        return DsgMatrix(tuple(row[:k] for row in self.bits[:k]))

    @classmethod
    def from_edges(cls, r: int, edges) -> "DsgMatrix":
        rows = [[0] * r for _ in range(r)]
        for i, j in edges:
            rows[i - 1][j - 1] = 1
        return cls(tuple(tuple(row) for row in rows))


def enumerate_dsg(d: int) -> Iterator[DsgMatrix]:
    """All 3^binom(d,2) graphs: each unordered pair is absent, i->j or j->i."""
    if d < 1:
        raise ValueError("d must be >= 1")
    pairs = list(combinations(range(d), 2))
    for states in product((0, 1, 2), repeat=len(pairs)):
        rows = [[0] * d for _ in range(d)]
        for (i, j), s in zip(pairs, states):
            if s == 1:
                rows[i][j] = 1
            elif s == 2:
                rows[j][i] = 1
        yield DsgMatrix(tuple(tuple(row) for row in rows))


def dsg_weight_sum(d: int, l: int, roots: Sequence):
    """Sum over graphs with l edges of prod_{(i,j) in E} z_i."""
    if not 0 <= l <= comb(d, 2):
        raise ValueError("edge count out of range")
    # every pair contributes 1, z_i (edge i->j) or z_j; only the edge-count degree is tracked
    poly = [Fraction(1)]
    for i, j in combinations(range(d), 2):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k] = nxt[k] + c
            nxt[k + 1] = nxt[k + 1] + c * (roots[i] + roots[j])
        poly = nxt
    return poly[l]


def dsg_weight_sum_brute(d: int, l: int, roots: Sequence):
    total = Fraction(0)
    for g in enumerate_dsg(d):
        es = g.edges()
        if len(es) != l:
            continue
        w = Fraction(1)
        for i, _ in es:
            w = w * roots[i - 1]
        total = total + w
    return total


def simple_graph_rhs(d: int, l: int, roots: Sequence):
    """sum_{c in C(l, d-1)} e_c(z) * (signed count of VD(c))."""
    if d == 1:
        return Fraction(1) if l == 0 else Fraction(0)
    total = Fraction(0)
    for c in compositions_nn(l, d - 1, max_part=d):
        s = signed_vd_count(d, c)
        if s:
            total = total + s * e_comp(c, roots)
    return total


def check_simple_graph_gen(d: int, l: int, roots: Sequence, brute: bool = False) -> bool:
    lhs = dsg_weight_sum_brute(d, l, roots) if brute else dsg_weight_sum(d, l, roots)
    return lhs == simple_graph_rhs(d, l, roots)


# ---------------------------------------------------------------------------
# size-bounded sequences

Seq = Tuple[FrozenSet[int], ...]


def as_seq(sets) -> Seq:
    return tuple(frozenset(s) for s in sets)


def is_size_bounded(sigma: Seq) -> bool:
    return all(len(s) <= i for i, s in enumerate(sigma, start=1))


def first_index(sigma: Seq, j: int) -> int:
    """l_j(sigma): 1-based index of the first set holding j, or 0."""
    for i, s in enumerate(sigma, start=1):
        if j in s:
            return i
    return 0


def reduce_R(sigma: Seq, j: int) -> Seq:
    if not sigma:
        return sigma
    lj = first_index(sigma, j)
    if lj == 0:
        return sigma[:-1]
    return sigma[: lj - 1] + tuple(s - {j} for s in sigma[lj:])


def is_in_B(sigma, r: int | None = None) -> bool:
    """sigma and R_i o ... o R_r(sigma), for every i, are all size-bounded."""
    sigma = as_seq(sigma)
    if r is None:
        r = len(sigma) + 1
    if not is_size_bounded(sigma):
        return False
    cur = sigma
    for j in range(r, 0, -1):
        cur = reduce_R(cur, j)
        if not is_size_bounded(cur):
            return False
    return True


def size_bounded_sequences(k: int, r: int) -> Iterator[Seq]:
    subsets_by_size = [
        [frozenset(c) for n in range(i + 1) for c in combinations(range(1, r + 1), n)] for i in range(1, k + 1)
    ]
    for choice in product(*subsets_by_size):
        yield tuple(choice)


def rho1(sigma, r: int) -> Tuple[int, ...]:
    return tuple(sum(1 for s in sigma if j in s) for j in range(1, r + 1))


def rho2(M: DsgMatrix) -> Tuple[int, ...]:
    return tuple(sum(M.bits[i][j] for i in range(M.r)) for j in range(M.r))


def encode(M: DsgMatrix) -> Seq:
    if M.r == 0:
        raise ValueError("need at least one vertex")
    if M.r == 1:
        return ()
    r = M.r - 1  # the new vertex is r + 1
    sigma = encode(M.leading(r))
    U = frozenset(j + 1 for j in range(r) if M.bits[r][j])
    col = [M.bits[i][r] for i in range(r)]
    if not any(col):
        return sigma + (U,)
    rest = [j for j in range(1, r + 1) if j not in U]
    v = [col[j - 1] for j in rest]
    i1 = v.index(1) + 1
    pivot = len(U) + i1
    out = []
    for i in range(1, r + 1):
        if i < pivot:
            out.append(sigma[i - 1])
        elif i == pivot:
            out.append(U | {r + 1})
        elif v[i - len(U) - 1]:
            out.append(sigma[i - 2] | {r + 1})
        else:
            out.append(sigma[i - 2])
    return tuple(out)


def decode(sigma) -> DsgMatrix:
    sigma = as_seq(sigma)
    r1 = len(sigma) + 1
    if not is_in_B(sigma, r1):
        raise NotInB(f"{[sorted(s) for s in sigma]} is not in B({r1 - 1},{r1})")
    return _decode(sigma)


def _decode(sigma: Seq) -> DsgMatrix:
    r1 = len(sigma) + 1
    if r1 == 1:
        return DsgMatrix(((0,),))
    r = r1 - 1
    pivot = first_index(sigma, r1)
    if pivot == 0:
        U = sigma[-1]
        incoming: List[int] = []
    else:
        U = sigma[pivot - 1] - {r1}
        rest = [j for j in range(1, r + 1) if j not in U]
        i1 = pivot - len(U)
        if i1 < 1:
            raise NotInB("first set holding the new vertex is too small")
        later = [i for i in range(pivot + 1, r + 1) if r1 in sigma[i - 1]]
        incoming = [rest[i1 - 1]] + [rest[i - len(U) - 1] for i in later]
    inner = _decode(reduce_R(sigma, r1))
    rows = [list(row) + [0] for row in inner.bits] + [[0] * r1]
    for j in U:
        rows[r][j - 1] = 1
    for i in incoming:
        rows[i - 1][r] = 1
    return DsgMatrix(tuple(tuple(row) for row in rows))
