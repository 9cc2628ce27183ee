"""Exact determinants and small dense matrix helpers.

Matrices are lists of rows.  Entries may be Fractions or symbolic ring
elements; nothing here assumes a field except :func:`det_bareiss`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .scalars import is_zero

Matrix = List[list]


def det_bareiss(a: Sequence[Sequence]) -> Fraction:
    """Fraction-free Bareiss elimination over the rationals."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in a]
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_laplace(a: Sequence[Sequence]):
    """Cofactor expansion along the first row; fine for symbolic m <= 4."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = Fraction(0)
    for j in range(n):
        if is_zero(a[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * det_laplace(minor)
        total = total - term if j % 2 else total + term
    return total


def det(a: Sequence[Sequence]):
    if all(isinstance(x, (int, Fraction)) for row in a for x in row):
        return det_bareiss(a)
    return det_laplace(a)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = Fraction(0)
        for x, y in zip(row, v):
            if not is_zero(x) and not is_zero(y):
                acc = acc + x * y
        out.append(acc)
    return out


def add(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def map_entries(a: Sequence[Sequence], fn) -> Matrix:
    return [[fn(x) for x in row] for row in a]
