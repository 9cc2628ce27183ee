"""Elementary / complete homogeneous symmetric functions and their identities."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .combinatorics import compositions_pos
from .errors import ZeroLeading, ZeroRoot
from .laurent import SparseLaurent
from .scalars import is_zero


def elem_sym(k: int, vals: Sequence):
    """e_k(vals); 1 for k == 0 and 0 for k > len(vals)."""
    if k < 0 or k > len(vals):
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    # coefficients of prod(1 + v*x), truncated at degree k
    e = [Fraction(1)] + [Fraction(0)] * k
    for n, v in enumerate(vals, start=1):
        for j in range(min(n, k), 0, -1):
            e[j] = e[j] + v * e[j - 1]
    return e[k]


def complete_hom(k: int, vals: Sequence):
    """h_k(vals): sum over weakly increasing index tuples of length k."""
    if k < 0:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    if not vals:
        return Fraction(0)
    # h_j over a growing prefix: h_j(t_1..t_n) = h_j(t_1..t_{n-1}) + t_n h_{j-1}(t_1..t_n)
    h = [Fraction(1)] + [Fraction(0)] * k
    for v in vals:
        for j in range(1, k + 1):
            h[j] = h[j] + v * h[j - 1]
    return h[k]


def elem_seq(vals: Sequence, upto: int) -> list:
    return [elem_sym(k, vals) for k in range(upto + 1)]


def mu(n: int, xs: Sequence, ys: Sequence):
    """Alternating convolution sum_l (-1)^l h_l(xs) e_{n-l}(ys); zero for n < 0."""
    if n < 0:
        return Fraction(0)
    total = Fraction(0)
    for l in range(n + 1):
        term = complete_hom(l, xs) * elem_sym(n - l, ys)
        total = total - term if l % 2 else total + term
    return total


def e_comp(c: Sequence[int], vals: Sequence):
    out = Fraction(1)
    for part in c:
        out = out * elem_sym(part, vals)
    return out


def h_comp(c: Sequence[int], vals: Sequence):
    out = Fraction(1)
    for part in c:
        out = out * complete_hom(part, vals)
    return out


def check_eh_identity(n: int, vals: Sequence) -> bool:
    total = Fraction(0)
    for i in range(n + 1):
        term = complete_hom(i, vals) * elem_sym(n - i, vals)
        total = total - term if i % 2 else total + term
    return total == (1 if n == 0 else 0)


def check_ec_hc_identities(n: int, vals: Sequence) -> bool:
    sign_n = -1 if n % 2 else 1
    lhs_e = Fraction(0)
    lhs_h = Fraction(0)
    for c in compositions_pos(n):
        s = -1 if len(c) % 2 else 1
        lhs_e = lhs_e + s * e_comp(c, vals)
        lhs_h = lhs_h + s * h_comp(c, vals)
    return lhs_e == sign_n * complete_hom(n, vals) and lhs_h == sign_n * elem_sym(n, vals)


def _nonzero_roots(roots: Sequence) -> None:
    for z in roots:
        if is_zero(z):
            raise ZeroRoot("roots must be nonzero")


def check_e_z_prod(n: int, m: int, roots: Sequence) -> bool:
    """Split e_n(1/z) * prod(z_1..z_m) by the head/tail root groups."""
    _nonzero_roots(roots)
    d = len(roots)
    if not (1 <= m <= d and 0 <= n <= d):
        raise ValueError("need 1 <= m <= d and 0 <= n <= d")
    head, tail = list(roots[:m]), list(roots[m:])
    recip_all = [Fraction(1) / z for z in roots]
    recip_tail = [Fraction(1) / z for z in tail]
    prod_head = Fraction(1)
    for z in head:
        prod_head = prod_head * z
    lhs = elem_sym(n, recip_all) * prod_head
    ok = True
    if n <= m:
        rhs = sum((elem_sym(m - n + i, head) * elem_sym(i, recip_tail) for i in range(n + 1)), Fraction(0))
        ok = ok and lhs == rhs
    if n >= m:
        rhs = sum((elem_sym(i, head) * elem_sym(n - m + i, recip_tail) for i in range(m + 1)), Fraction(0))
        ok = ok and lhs == rhs
    return ok


def poly_from_roots(a0, roots: Sequence) -> list:
    """Coefficients a_0..a_d of a0 * prod(1 - z/z_i)."""
    if is_zero(a0):
        raise ZeroLeading("a0 must be nonzero")
    _nonzero_roots(roots)
    recips = [Fraction(1) / z for z in roots]
    return [(-1) ** i * a0 * elem_sym(i, recips) for i in range(len(roots) + 1)]


def pairwise_sum_poly(roots: Sequence, var: str = "z") -> SparseLaurent:
    """prod_{i<j} (z - z_i - z_j) as a polynomial in ``var``."""
    if len(roots) < 2:
        raise ValueError("need at least two roots")
    z = SparseLaurent.var(var)
    out = SparseLaurent.const(1)
    for a, b in combinations(roots, 2):
        out = out * (z - a - b)
    return out
