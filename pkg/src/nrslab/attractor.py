"""Attractor points V(m) and the PT sums evaluated at them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

from .combinatorics import compositions_pos
from .errors import IndexOutOfRange, ZeroRoot
from .polyspec import PolySpec
from .scalars import is_zero
from .symmetric import complete_hom, elem_sym


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out = out * x
    return out


@dataclass(frozen=True)
class AttractorPoint:
    m: int
    selection: Tuple[int, ...]  # 1-based root indices playing z_1..z_m
    coords: tuple
    spec: PolySpec

    @property
    def head(self) -> list:
        return [self.spec.roots[i - 1] for i in self.selection]

    @property
    def tail(self) -> list:
        chosen = set(self.selection)
        return [z for i, z in enumerate(self.spec.roots, start=1) if i not in chosen]

    @property
    def c(self):
        """-a_{m-1}/a_m, the constant shared by every coordinate map."""
        return -self.spec.a(self.m - 1) / self.spec.a(self.m)


@dataclass(frozen=True)
class PTValue:
    s: int
    value: object


def build_alpha(m: int, spec: PolySpec, selection: Sequence[int]) -> AttractorPoint:
    d = spec.d
    if not 1 <= m <= d - 1:
        raise ValueError("need 1 <= m <= d - 1")
    sel = tuple(int(i) for i in selection)
    if len(sel) != m or len(set(sel)) != m or not all(1 <= i <= d for i in sel):
        raise ValueError(f"selection must be {m} distinct indices in 1..{d}")
    if any(is_zero(z) for z in spec.roots):
        raise ZeroRoot("roots must be nonzero")
    spec.require_nonzero(m)
    head = [spec.roots[i - 1] for i in sel]
    tail = [z for i, z in enumerate(spec.roots, start=1) if i not in set(sel)]
    recip_tail = [Fraction(1) / z for z in tail]
    am, a0 = spec.a(m), spec.a(0)
    c = -spec.a(m - 1) / am
    base = am / a0 * (-1) ** m * _prod(head)
    coords = [sum(head[1:], head[0])]
    for l in range(1, m):
        coords.append(complete_hom(l - 1, recip_tail) * c**l * base)
    return AttractorPoint(m, sel, tuple(coords), spec)


def v_set(m: int, spec: PolySpec) -> List[AttractorPoint]:
    """One point per m-subset, dropping later points whose coordinates repeat exactly."""
    out: List[AttractorPoint] = []
    for sel in combinations(range(1, spec.d + 1), m):
        pt = build_alpha(m, spec, sel)
        if not any(all(a == b for a, b in zip(pt.coords, q.coords)) for q in out):
            out.append(pt)
    return out


def _check_s(alpha: AttractorPoint, s: int) -> None:
    if not 0 <= s <= alpha.spec.d - alpha.m + 1:
        raise IndexOutOfRange(f"s={s} outside 0..{alpha.spec.d - alpha.m + 1}")


def pt_closed(alpha: AttractorPoint, s: int) -> PTValue:
    _check_s(alpha, s)
    spec, m = alpha.spec, alpha.m
    am, a0 = spec.a(m), spec.a(0)
    ph = _prod(alpha.head)
    if s == 0:
        return PTValue(0, spec.a(m - 1) / am + sum(alpha.head[1:], alpha.head[0]))
    if s == 1:
        return PTValue(1, 1 - (-1) ** m * a0 / (am * ph))
    e = elem_sym(s - 1, [Fraction(1) / z for z in alpha.tail])
    v = a0 * e / (am * ph)
    return PTValue(s, -v if (s - m) % 2 else v)


def expr_at_alpha(alpha: AttractorPoint, k: int):
    """expr_m(alpha; k) = (-1)^(k-1) e_k(z_1..z_m)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    v = elem_sym(k, alpha.head)
    return -v if k % 2 == 0 else v


def expr_definitional(alpha: AttractorPoint, k: int):
    """expr_m(alpha; k) from its defining sum over h, before any simplification."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return alpha.coords[0]
    spec, m = alpha.spec, alpha.m
    recip_tail = [Fraction(1) / z for z in alpha.tail]
    ph = _prod(alpha.head)
    total = Fraction(0)
    for h in range(k - 1, m):
        term = complete_hom(h - k + 1, recip_tail) * spec.a(m - 1 - h) / spec.a(0) * ph
        total = total + term if (m + 1) % 2 == 0 else total - term
    return total


def _pt_sum(alpha: AttractorPoint, s: int, expr=expr_at_alpha):
    spec, m = alpha.spec, alpha.m
    am = spec.a(m)
    total = Fraction(0)
    ex_cache = {}
    for i in range(0, spec.d - m - s + 2):
        if i + s < 2:
            continue
        coeff = spec.a(m - 1 + i + s)
        if is_zero(coeff):
            continue
        inner = Fraction(0)
        for comp in compositions_pos(i):
            term = Fraction(1)
            for part in comp:
                if part not in ex_cache:
                    ex_cache[part] = expr(alpha, part)
                term = term * ex_cache[part]
            inner = inner + term
        total = total - coeff / am * inner
    return total


def pt_composition(alpha: AttractorPoint, s: int, expr=expr_at_alpha) -> PTValue:
    """PT through its defining positive-composition expansion."""
    _check_s(alpha, s)
    return PTValue(s, _pt_sum(alpha, s, expr))


def fixed_point_residuals(alpha: AttractorPoint, expr=expr_at_alpha) -> list:
    """alpha_i minus the right side of the i-th fixed-point relation.

    For (d, m) with 2m > d + 2 the highest relations reach s = j + 1 beyond
    d - m + 1; there the defining sum is empty and PT contributes zero.
    """
    m = alpha.m
    c = alpha.c
    pt = {s: _pt_sum(alpha, s, expr) for s in range(0, m + 1)}
    a = alpha.coords
    res = [a[0] - (c + pt[0])]
    if m >= 2:
        res.append(a[1] - (c + a[1] * pt[1]))
    for i in range(2, m):
        rhs = sum((a[i - j] * c**j * pt[j + 1] for j in range(i)), Fraction(0))
        res.append(a[i] - rhs)
    return res


def certify_fixed_point(alpha: AttractorPoint) -> bool:
    return all(is_zero(r) for r in fixed_point_residuals(alpha))
