"""Banded block systems, their rank-independent null vector, and lattice paths.

The elimination polynomial g(x0) of the NRS(2) system is read off from the
first row block of ``system(f)`` applied to the null vector of the remaining
blocks.  Null-vector entries are signed sums of minors, and those minors are
signed counts of vertex-disjoint lattice path families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .combinatorics import binom, compositions_nn, inversions
from .errors import NotSurjective, SizeMismatch, ZeroCoefficient
from .laurent import SparseLaurent
from .linalg import det, matvec
from .polyspec import PolySpec
from .scalars import is_zero
from .symmetric import elem_sym

Point = Tuple[int, int]


# ---------------------------------------------------------------------------
# block matrices


def band_block(rows: int, cols: int, y: Sequence) -> list:
    """B(rows, cols, y): entry (a, b) is y[a - b] inside the band, else 0."""
    width = rows - cols
    out = []
    for a in range(rows):
        row = []
        for b in range(cols):
            k = a - b
            row.append(y[k] if 0 <= k <= width and k < len(y) else Fraction(0))
        out.append(row)
    return out


@dataclass(frozen=True)
class BlockSpec:
    """Row sizes, column sizes and one entry sequence per block.

    ``entries[i][j]`` is the sequence for block (i, j); ``None`` or an empty
    sequence means a zero block.  A block with more columns than rows is
    always zero.
    """

    row_sizes: Tuple[int, ...]
    col_sizes: Tuple[int, ...]
    entries: Tuple[Tuple[Optional[tuple], ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.row_sizes) or any(len(r) != len(self.col_sizes) for r in self.entries):
            raise SizeMismatch("entry table does not match block counts")
        for i, mi in enumerate(self.row_sizes):
            for j, nj in enumerate(self.col_sizes):
                seq = self.entries[i][j]
                if seq and len(seq) > max(mi - nj + 1, 0):
                    raise SizeMismatch(f"block ({i + 1},{j + 1}) sequence longer than its band")

    def x(self, i: int, j: int, h: int):
        """x_{i,j}(h) with 1-based block indices; zero off the band."""
        seq = self.entries[i - 1][j - 1]
        width = self.row_sizes[i - 1] - self.col_sizes[j - 1]
        if not seq or h < 0 or h > width or h >= len(seq):
            return Fraction(0)
        return seq[h]

    def drop_first_row_block(self) -> "BlockSpec":
        return BlockSpec(self.row_sizes[1:], self.col_sizes, self.entries[1:])


def build_block_matrix(spec: BlockSpec) -> list:
    rows = []
    for i, mi in enumerate(spec.row_sizes):
        blocks = [band_block(mi, nj, spec.entries[i][j] or ()) for j, nj in enumerate(spec.col_sizes)]
        for a in range(mi):
            row = []
            for blk in blocks:
                row.extend(blk[a])
            rows.append(row)
    return rows


def symbolic_block_spec(row_sizes: Sequence[int], col_sizes: Sequence[int], prefix: str = "x") -> BlockSpec:
    """Every in-band entry an independent indeterminate ``x_i_j_h``."""
    entries = []
    for i, mi in enumerate(row_sizes, start=1):
        row = []
        for j, nj in enumerate(col_sizes, start=1):
            w = mi - nj
            row.append(tuple(SparseLaurent.var(f"{prefix}_{i}_{j}_{h}") for h in range(w + 1)) if w >= 0 else None)
        entries.append(tuple(row))
    return BlockSpec(tuple(row_sizes), tuple(col_sizes), tuple(entries))


def random_block_spec(row_sizes: Sequence[int], col_sizes: Sequence[int], rng) -> BlockSpec:
    entries = []
    for mi in row_sizes:
        row = []
        for nj in col_sizes:
            w = mi - nj
            if w < 0:
                row.append(None)
            else:
                row.append(tuple(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(w + 1)))
        entries.append(tuple(row))
    return BlockSpec(tuple(row_sizes), tuple(col_sizes), tuple(entries))


# ---------------------------------------------------------------------------
# the system attached to f


def row_sizes(d: int) -> Tuple[int, ...]:
    big = comb(d, 2)
    return tuple(1 + big + 2 - 2 * i for i in range(1, d))


def col_sizes(d: int) -> Tuple[int, ...]:
    small = comb(d - 1, 2)
    return tuple(1 + small + 1 - j for j in range(1, d))


def _binom_table(n: int, k: int) -> int:
    # the entry table fixes binom(-1, -1) = 1
    if n == -1 and k == -1:
        return 1
    return binom(n, k)


def x_sequence(spec: PolySpec, j: int) -> tuple:
    """x_j(l) = -t^p binom(l + p, p) a_{l+j} / a_2 with p = floor((j-1)/2), t = a_0/a_1."""
    d = spec.d
    if not 0 <= j <= d:
        return ()
    t = spec.a(0) / spec.a(1)
    p = (j - 1) // 2
    a2 = spec.a(2)
    return tuple(-(t**p) * _binom_table(l + p, p) * spec.a(l + j) / a2 for l in range(d - j + 1))


def build_system_f(spec: PolySpec) -> BlockSpec:
    d = spec.d
    if d < 2:
        raise ValueError("need d >= 2")
    spec.require_nonzero(1, 2)
    rows, cols = row_sizes(d), col_sizes(d)
    seqs = {j: x_sequence(spec, j) for j in range(d + 1)}
    entries = []
    for i in range(1, d):
        row = []
        for j in range(1, d):
            idx = 2 * i - j
            width = rows[i - 1] - cols[j - 1]
            row.append(seqs[idx] if 0 <= idx <= d and width >= 0 else None)
        entries.append(tuple(row))
    return BlockSpec(rows, cols, tuple(entries))


def build_system_prime(spec: PolySpec) -> BlockSpec:
    return build_system_f(spec).drop_first_row_block()


# ---------------------------------------------------------------------------
# rank-independent null vector


def minor_matrix(spec: BlockSpec, j0: int, c: Sequence[int]) -> list:
    """Keep row m(i) - c(i) of each row block and the last column of every column block but j0."""
    cols = [j for j in range(1, len(spec.col_sizes) + 1) if j != j0]
    out = []
    for i, mi in enumerate(spec.row_sizes, start=1):
        # row m(i) - c(i) (1-based) meets the last column of block j at band offset m(i) - c(i) - n(j)
        out.append([spec.x(i, j, mi - c[i - 1] - spec.col_sizes[j - 1]) for j in cols])
    return out


def _check_null_shape(spec: BlockSpec) -> None:
    if len(spec.row_sizes) + 1 != len(spec.col_sizes):
        raise SizeMismatch("null vector needs one more column block than row blocks")


@dataclass(frozen=True)
class NullVector:
    blocks: Tuple[tuple, ...]

    def flat(self) -> list:
        return [x for blk in self.blocks for x in blk]

    def entry(self, j: int, l: int):
        return self.blocks[j - 1][l]


def null_vector_entry(spec: BlockSpec, j0: int, l: int):
    _check_null_shape(spec)
    r = len(spec.row_sizes)
    target = spec.col_sizes[j0 - 1] - 1 - l
    total = Fraction(0)
    if target < 0:
        return total
    for c in compositions_nn(target, r) if r else [()]:
        if any(ci >= mi for ci, mi in zip(c, spec.row_sizes)):
            continue
        mat = minor_matrix(spec, j0, c)
        if any(all(is_zero(x) for x in row) for row in mat):
            continue
        total = total + det(mat)
    return total if j0 % 2 else -total


def null_vector(spec: BlockSpec) -> NullVector:
    _check_null_shape(spec)
    blocks = []
    for j0, nj in enumerate(spec.col_sizes, start=1):
        blocks.append(tuple(null_vector_entry(spec, j0, l) for l in range(nj)))
    return NullVector(tuple(blocks))


def null_vector_entry_perm(spec: BlockSpec, j0: int, l: int):
    """The same entry as a signed sum over bijections, without determinants."""
    _check_null_shape(spec)
    r = len(spec.row_sizes)
    cols = [j for j in range(1, r + 2) if j != j0]
    target = spec.col_sizes[j0 - 1] - 1 - l
    total = Fraction(0)
    for c in compositions_nn(target, r) if r else [()]:
        for perm in permutations(range(r)):
            # perm[p] = row block paired with the p-th remaining column block
            term = Fraction(1)
            for p, i in enumerate(perm):
                j = cols[p]
                term = term * spec.x(i + 1, j, spec.row_sizes[i] - spec.col_sizes[j - 1] - c[i])
                if is_zero(term):
                    break
            if is_zero(term):
                continue
            total = total - term if inversions(perm) % 2 else total + term
    return total if j0 % 2 else -total


def check_null(spec: BlockSpec, v: NullVector) -> bool:
    prod = matvec(build_block_matrix(spec), v.flat())
    return all(is_zero(x) for x in prod)


def check_W_sum(d: int, sigma: Sequence[int]) -> bool:
    """Column sums of W(d)_{i,j} = d - 2 - 2i + j along a surjection sigma: [d-1] -> [d-2]."""
    if len(sigma) != d - 1 or set(sigma) != set(range(1, d - 1)):
        raise NotSurjective(f"{sigma} is not a surjection onto [{d - 2}]")
    dup_value = next(s for s in sigma if list(sigma).count(s) == 2)
    pair = [i for i, s in enumerate(sigma, start=1) if s == dup_value]
    for u in pair:
        total = sum(d - 2 - 2 * sigma[i - 1] + i for i in range(1, d) if i != u)
        if total != comb(d - 1, 2) + 1 - u:
            return False
    return True


# ---------------------------------------------------------------------------
# lattice paths


def source(i: int) -> Point:
    return (-(-(i + 1) // 2), -((i - 1) // 2))


def sink(d: int, i: int, r: int) -> Point:
    return (i, d - i - r)


@lru_cache(maxsize=None)
def lattice_paths(start: Point, end: Point) -> Tuple[Tuple[Point, ...], ...]:
    """All paths using steps (0, 1) and (1, 1)."""
    dx = end[0] - start[0]
    dy = end[1] - start[1]
    if dx < 0 or dy < dx:
        return ()
    if dy == 0:
        return ((start,),)
    out = []
    for step in ((0, 1), (1, 1)):
        nxt = (start[0] + step[0], start[1] + step[1])
        for tail in lattice_paths(nxt, end):
            out.append((start,) + tail)
    return tuple(out)


def path_count(start: Point, end: Point) -> int:
    dx = end[0] - start[0]
    dy = end[1] - start[1]
    return binom(dy, dx) if dy >= 0 else 0


@dataclass(frozen=True)
class PathSystem:
    paths: Tuple[Tuple[Point, ...], ...]
    sinks: Tuple[Point, ...]
    special: Tuple[bool, ...]
    inv_count: int
    kind: str

    @property
    def sign(self) -> int:
        return -1 if self.inv_count % 2 else 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "inversions": self.inv_count,
            "paths": [{"special": s, "vertices": [list(p) for p in path]} for path, s in zip(self.paths, self.special)],
        }


def _layout(d: int, c: Sequence[int], variant) -> tuple:
    """Source and sink positions for VD(c) or VD(i0, j0, c), plus which sinks admit the special edge."""
    if variant == "full":
        if len(c) != d - 1:
            raise ValueError("full variant needs a composition with d-1 parts")
        srcs = [(l, source(l)) for l in range(1, d)]
        snks = [(i, sink(d, i, c[i - 1])) for i in range(1, d)]
        special = {i: c[i - 1] == d for i in range(1, d)}
        kind = f"VD{tuple(c)}"
    else:
        i0, j0 = variant
        if len(c) != d - 2:
            raise ValueError("reduced variant needs a composition with d-2 parts")
        srcs = [(l + (l >= j0), source(l + (l >= j0))) for l in range(1, d - 1)]
        snks = [(i + (i >= i0), sink(d, i + (i >= i0), c[i - 1])) for i in range(1, d - 1)]
        special = {i + (i >= i0): c[i - 1] == d for i in range(1, d - 1)}
        kind = f"VD({i0},{j0},{tuple(c)})"
    return srcs, snks, special, kind


def _edge_options(d: int, src_idx: int, src: Point, sink_idx: int, snk: Point, special_ok: bool):
    """Ways to join a source to a sink: ('a', path) lattice paths or one ('b', edge)."""
    if special_ok and src_idx == 2 * sink_idx:
        return [("b", (src, snk))]
    return [("a", p) for p in lattice_paths(src, snk)]


def enumerate_vd(d: int, c: Sequence[int], variant="full") -> List[PathSystem]:
    """Path families from the sources to the sinks fixed by ``c``.

    Ordinary paths are pairwise vertex disjoint; a special single edge from
    source(2i) to sink(i, d) is allowed whenever c assigns part d to sink i.
    ``variant`` is ``"full"`` or a pair ``(i0, j0)``.
    """
    if any(p < 0 or p > d for p in c):
        return []
    srcs, snks, special, kind = _layout(d, c, variant)
    n = len(srcs)
    results: List[PathSystem] = []
    chosen: list = [None] * n

    def rec(l: int, used_sinks: frozenset, occupied: frozenset):
        if l == n:
            sink_seq = [snks[s][0] for _, s, _ in chosen]
            results.append(
                PathSystem(
                    paths=tuple(p for _, _, p in chosen),
                    sinks=tuple(snks[s][1] for _, s, _ in chosen),
                    special=tuple(k == "b" for k, _, _ in chosen),
                    inv_count=inversions(sink_seq),
                    kind=kind,
                )
            )
            return
        src_idx, src = srcs[l]
        for s in range(n):
            if s in used_sinks:
                continue
            sink_idx, snk = snks[s]
            for kind_, path in _edge_options(d, src_idx, src, sink_idx, snk, special[sink_idx]):
                if kind_ == "a":
                    verts = frozenset(path)
                    if verts & occupied:
                        continue
                    chosen[l] = (kind_, s, path)
                    rec(l + 1, used_sinks | {s}, occupied | verts)
                else:
                    chosen[l] = (kind_, s, path)
                    rec(l + 1, used_sinks | {s}, occupied)
        chosen[l] = None

    rec(0, frozenset(), frozenset())
    return results


def signed_vd_count(d: int, c: Sequence[int], variant="full") -> int:
    return sum(g.sign for g in enumerate_vd(d, c, variant))


def lgv_matrix(d: int, c: Sequence[int], variant="full") -> list:
    """Sink-by-source path counts; the special edge counts as one path."""
    srcs, snks, special, _ = _layout(d, c, variant)
    rows = []
    for sink_idx, snk in snks:
        row = []
        for src_idx, src in srcs:
            if special[sink_idx] and src_idx == 2 * sink_idx:
                row.append(1)
            else:
                row.append(path_count(src, snk))
        rows.append(row)
    return rows


def signed_vd_count_det(d: int, c: Sequence[int], variant="full") -> int:
    if any(p < 0 or p > d for p in c):
        return 0
    return int(det(lgv_matrix(d, c, variant)))


# ---------------------------------------------------------------------------
# path-sum formulas and the elimination polynomial


def epsilon(d: int, i: int, j: int) -> int:
    return j // 2 - (i - 1) + sum(l - 1 - l // 2 for l in range(1, d))


def weight(spec: PolySpec, c: Sequence[int]):
    out = Fraction(1)
    for part in c:
        out = out * (-spec.a(spec.d - part) / spec.a(2))
    return out


def _t_power(spec: PolySpec, k: int):
    t = spec.a(0) / spec.a(1)
    return t**k


def vd_path_sum(spec: PolySpec, j0: int, k: int, counter=signed_vd_count):
    """Right-hand side of the path formula for v_{j0}(n(j0) - 1 - k) of system'(f)."""
    d = spec.d
    total = Fraction(0)
    for c in compositions_nn(k, d - 2, max_part=d) if d > 2 else ([()] if k == 0 else []):
        s = counter(d, c, (1, j0))
        if s:
            total = total + s * weight(spec, c)
    total = total * _t_power(spec, epsilon(d, 1, j0))
    return total if j0 % 2 else -total


def check_vd_paths_lemma(spec: PolySpec, j0: int, k: int) -> bool:
    sysp = build_system_prime(spec)
    n_j0 = sysp.col_sizes[j0 - 1]
    if not 0 <= k <= n_j0 - 1:
        raise IndexError("k out of range for block j0")
    lhs = null_vector_entry(sysp, j0, n_j0 - 1 - k)
    return lhs == vd_path_sum(spec, j0, k)


def all_paths_sum(spec: PolySpec, k: int, counter=signed_vd_count):
    """t^eps(1,1) * sum_{c in C(k, d-1)} w(c) * (signed count of VD(c))."""
    d = spec.d
    total = Fraction(0)
    for c in compositions_nn(k, d - 1, max_part=d):
        s = counter(d, c, "full")
        if s:
            total = total + s * weight(spec, c)
    return total * _t_power(spec, epsilon(d, 1, 1))


def g_coefficients(spec: PolySpec, v: NullVector | None = None) -> list:
    """Coefficients of g(x0), lowest degree first: row r of block 1 times v."""
    spec.require_nonzero(1, 2)
    system = build_system_f(spec)
    if v is None:
        v = null_vector(system.drop_first_row_block())
    first = build_block_matrix(BlockSpec(system.row_sizes[:1], system.col_sizes, system.entries[:1]))
    return matvec(first, v.flat())


def build_g(spec: PolySpec, var: str = "x0"):
    """g(x0) as a polynomial in ``var``; its degree is binom(d, 2)."""
    spec.require_nonzero(spec.d)
    coeffs = g_coefficients(spec)
    x = SparseLaurent.var(var)
    out = SparseLaurent.const(0)
    for k, c in enumerate(coeffs):
        if not is_zero(c):
            out = out + c * x**k
    return out, coeffs


def g_leading_coefficient(spec: PolySpec):
    d = spec.d
    return (-spec.a(d) / spec.a(2)) ** (d - 1) * _t_power(spec, epsilon(d, 1, 1))


def check_g_eq_P(spec: PolySpec) -> bool:
    """g(x0) = (-a_d/a_2)^(d-1) t^eps(1,1) * prod_{i<j}(x0 - z_i - z_j), coefficientwise."""
    _, coeffs = build_g(spec)
    lc = g_leading_coefficient(spec)
    P = pairwise_sum_coefficients(spec.roots)
    if len(coeffs) != len(P):
        return False
    return all(c == lc * pk for c, pk in zip(coeffs, P))


def pairwise_sum_coefficients(roots: Sequence) -> list:
    """Coefficients of prod_{i<j}(x - z_i - z_j), lowest degree first, for any scalar kind."""
    sums = [a + b for a, b in combinations(roots, 2)]
    n = len(sums)
    return [elem_sym(n - k, sums) * (-1) ** (n - k) for k in range(n + 1)]


def elimination_multipliers(spec: PolySpec, v: NullVector | None = None):
    """p0, p1 with p0*(f02 - x0) + p1*(f12 - x1) = g(x0).

    Odd column blocks j multiply (f02 - x0) by x1^((j-1)/2) x0^k, even ones
    multiply (f12 - x1) by x1^((j-2)/2) x0^k, with coefficients from v.
    """
    if v is None:
        v = null_vector(build_system_prime(spec))
    x0, x1 = SparseLaurent.symbols("x0", "x1")
    p0 = SparseLaurent.const(0)
    p1 = SparseLaurent.const(0)
    for j, blk in enumerate(v.blocks, start=1):
        for k, coeff in enumerate(blk):
            if is_zero(coeff):
                continue
            if j % 2:
                p0 = p0 + coeff * x1 ** ((j - 1) // 2) * x0**k
            else:
                p1 = p1 + coeff * x1 ** ((j - 2) // 2) * x0**k
    return p0, p1
