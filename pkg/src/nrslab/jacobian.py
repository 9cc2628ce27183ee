"""The matrices M, U, V behind the factored Jacobian determinant at alpha."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import SingularStep, ZeroRoot
from .laurent import SparseLaurent
from .linalg import add, det, matmul
from .polyspec import PolySpec
from .scalars import is_zero
from .symmetric import complete_hom, elem_sym, mu


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out = out * x
    return out


def symbolic_roots(d: int, prefix: str = "z") -> list:
    return [SparseLaurent.var(f"{prefix}{i}") for i in range(1, d + 1)]


def _split(roots: Sequence, m: int):
    d = len(roots)
    if not 1 <= m <= d - 1:
        raise ValueError("need 1 <= m <= d - 1")
    if any(is_zero(z) for z in roots):
        raise ZeroRoot("roots must be nonzero")
    return list(roots[:m]), list(roots[m:])


def build_U(roots: Sequence, m: int) -> list:
    d = len(roots)
    head, tail = _split(roots, m)
    ph = _prod(head)
    U = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            v = mu(d - 2 * m + j - i + 1, head, tail)
            row.append(v if i == 1 else ph * v)
        U.append(row)
    return U


def build_V(roots: Sequence, m: int) -> list:
    head, tail = _split(roots, m)
    pt = _prod(tail)
    rh = [Fraction(1) / z for z in head]
    rt = [Fraction(1) / z for z in tail]
    return [
        [-mu(i - j - 1, rh, rt) * pt if j < i else Fraction(0) for j in range(1, m + 1)]
        for i in range(1, m + 1)
    ]


def build_M(roots: Sequence, m: int) -> list:
    """M before the row and column operations that turn it into U + V.

    Row 1:  sum_k e_k(1/z) mu_{d-2m+j+k}(H; T)
    Row i:  prod(H) sum_c (-1)^(c-1) h_{c-1}(1/T) sum_k e_k(1/z) mu_{d-2m+j+k-i+c}(H; T)
            - [j < i] e_{i-j-1}(1/T) prod(T)
    with k running over 0..max(m-j-1, 0).
    """
    d = len(roots)
    head, tail = _split(roots, m)
    ph, pt = _prod(head), _prod(tail)
    rt = [Fraction(1) / z for z in tail]
    ek = [elem_sym(k, [Fraction(1) / z for z in roots]) for k in range(m + 1)]
    M = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            K = max(m - j - 1, 0)
            if i == 1:
                v = sum((ek[k] * mu(d - 2 * m + j + k, head, tail) for k in range(K + 1)), Fraction(0))
            else:
                v = Fraction(0)
                for c in range(1, i):
                    inner = sum((ek[k] * mu(d - 2 * m + j + k - i + c, head, tail) for k in range(K + 1)), Fraction(0))
                    term = complete_hom(c - 1, rt) * inner
                    v = v - term if (c - 1) % 2 else v + term
                v = ph * v
                if j < i:
                    v = v - elem_sym(i - j - 1, rt) * pt
            row.append(v)
        M.append(row)
    return M


def operation_matrices(roots: Sequence, m: int) -> Tuple[list, list]:
    """Unitriangular L, R with M = L (U + V) R, so det M = det(U + V).

    R[j+k][j] = e_k(1/z) for 1 <= k <= m-j-1 (column operations) and
    L[i][i2] = (-1)^(i-i2) h_{i-i2}(1/T) for 2 <= i2 < i (row operations).
    """
    _, tail = _split(roots, m)
    rt = [Fraction(1) / z for z in tail]
    ek = [elem_sym(k, [Fraction(1) / z for z in roots]) for k in range(m + 1)]
    L = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    R = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    for j in range(1, m + 1):
        for k in range(1, max(m - j - 1, 0) + 1):
            R[j + k - 1][j - 1] = ek[k]
    for i in range(3, m + 1):
        for i2 in range(2, i):
            h = complete_hom(i - i2, rt)
            L[i - 1][i2 - 1] = -h if (i - i2) % 2 else h
    return L, R


def check_M_operations(roots: Sequence, m: int) -> bool:
    L, R = operation_matrices(roots, m)
    rebuilt = matmul(matmul(L, build_UV(roots, m)), R)
    M = build_M(roots, m)
    return all(a == b for ra, rb in zip(M, rebuilt) for a, b in zip(ra, rb))


def build_UV(roots: Sequence, m: int) -> list:
    return add(build_U(roots, m), build_V(roots, m))


def vandermonde_block(roots: Sequence, m: int):
    """prod_{j <= m < i} (z_i - z_j)."""
    head, tail = list(roots[:m]), list(roots[m:])
    out = Fraction(1)
    for zj in head:
        for zi in tail:
            out = out * (zi - zj)
    return out


def check_detM_eq_detUV(roots: Sequence, m: int) -> bool:
    return det(build_M(roots, m)) == det(build_UV(roots, m))


def check_lin_combo(roots: Sequence, m: int) -> bool:
    """With z_1 = z_{m+1}: z_1 row_1 + sum_i e_{m-i}(1/z_2..1/z_m) row_i of U + V vanishes."""
    roots = list(roots)
    if not roots[0] == roots[m]:
        raise ValueError("lin combo needs z_1 = z_{m+1}")
    S = build_UV(roots, m)
    rh = [Fraction(1) / z for z in roots[1:m]]
    coeffs = [roots[0]] + [elem_sym(m - i, rh) for i in range(2, m + 1)]
    for j in range(m):
        total = Fraction(0)
        for i in range(m):
            total = total + coeffs[i] * S[i][j]
        if not is_zero(total):
            return False
    return True


def check_factorization(roots: Sequence, m: int) -> bool:
    return det(build_UV(roots, m)) == vandermonde_block(roots, m)


def _ordered_roots(spec: PolySpec, m: int, selection: Optional[Sequence[int]]) -> list:
    if selection is None:
        return list(spec.roots)
    sel = list(selection)
    if len(sel) != m:
        raise ValueError("selection must have m indices")
    rest = [i for i in range(1, spec.d + 1) if i not in sel]
    return [spec.roots[i - 1] for i in sel + rest]


def factored_det(spec: PolySpec, m: int, selection: Optional[Sequence[int]] = None, normalized: bool = True):
    """prod_{j<=m<i}(z_i - z_j) / (a_m prod z)^m with the selected roots first.

    ``normalized`` measures a_m relative to a_0.  The Jacobian does not change
    when f is rescaled, and this scale-free form is the one equal to det J;
    ``normalized=False`` returns the formula with the raw coefficient a_m.
    """
    spec.require_nonzero(m)
    roots = _ordered_roots(spec, m, selection)
    if any(is_zero(z) for z in roots):
        raise ZeroRoot("roots must be nonzero")
    am = spec.a(m) / spec.a(0) if normalized else spec.a(m)
    return vandermonde_block(roots, m) / (am * _prod(roots)) ** m


def tail_degree_report(d: int, m: int) -> dict:
    """Degree of det(U+V) in each tail variable and the coefficient of prod z_n^m over the tail."""
    z = symbolic_roots(d)
    D = det(build_UV(z, m))
    names = [f"z{i}" for i in range(m + 1, d + 1)]
    degrees = {n: D.degree(n) for n in names}
    top = D
    for n in names:
        top = top.coefficients_in(n).get(m, SparseLaurent.const(0))
    return {"det": D, "degrees": degrees, "top_coefficient": top}


def substitution_vanishes(d: int, m: int) -> bool:
    z = symbolic_roots(d)
    z[m] = z[0]
    return is_zero(det(build_UV(z, m)))


# ---------------------------------------------------------------------------
# m = 2 cross-check through the explicit NRS(2) maps


def jacobian_exact_m2(spec: PolySpec, alpha) -> list:
    from .nrs2 import Nrs2System

    return Nrs2System(spec).jacobian(*alpha.coords)


def jacobian_numeric_m2(spec: PolySpec, alpha, rel_step: float = 1e-6) -> Tuple[list, complex, float]:
    """Central-difference Jacobian of F at alpha; returns (J, det J, residual norm at alpha)."""
    from .nrs2 import Nrs2System

    if alpha.m != 2:
        raise ValueError("numeric Jacobian is only defined for m = 2")
    sys = Nrs2System(spec)
    x = [complex(c) for c in alpha.coords]
    J = [[0j, 0j], [0j, 0j]]
    for k in range(2):
        h = rel_step * max(1.0, abs(x[k]))
        up = list(x)
        dn = list(x)
        up[k] += h
        dn[k] -= h
        if up[k] == x[k] or dn[k] == x[k]:
            raise SingularStep(f"step {h:g} underflows at coordinate {k}")
        fu = sys.residual(*up)
        fd = sys.residual(*dn)
        for r in range(2):
            J[r][k] = (fu[r] - fd[r]) / (2 * h)
    dj = J[0][0] * J[1][1] - J[0][1] * J[1][0]
    r0, r1 = sys.residual(*x)
    return J, dj, abs(complex(r0)) + abs(complex(r1))
