from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrslab.attractor import build_alpha, v_set
from nrslab.errors import ZeroCoefficient
from nrslab.harness import case_rng, random_roots
from nrslab.jacobian import (
    build_M,
    build_U,
    build_UV,
    build_V,
    check_detM_eq_detUV,
    check_factorization,
    check_lin_combo,
    check_M_operations,
    factored_det,
    jacobian_exact_m2,
    jacobian_numeric_m2,
    substitution_vanishes,
    symbolic_roots,
    tail_degree_report,
    vandermonde_block,
)
from nrslab.linalg import det
from nrslab.polyspec import PolySpec
from nrslab.symmetric import mu

from conftest import distinct_roots


def test_m1_matrix_is_single_mu():
    z = symbolic_roots(4)
    assert build_M(z, 1) == [[mu(3, z[:1], z[1:])]]
    assert build_UV(z, 1) == build_M(z, 1)


def test_U_entries_d3_m2():
    z = symbolic_roots(3)
    U = build_U(z, 2)
    head, tail = z[:2], z[2:]
    assert U[0] == [mu(0, head, tail), mu(1, head, tail)]
    assert U[1] == [head[0] * head[1] * mu(-1, head, tail), head[0] * head[1] * mu(0, head, tail)]
    assert U[1][0] == 0


def test_V_lower_triangular():
    z = symbolic_roots(5)
    V = build_V(z, 3)
    assert all(V[i][j] == 0 for i in range(3) for j in range(i, 3))
    assert V[1][0] != 0


def test_M_rational_d4():
    M = build_M([1, 2, 3, 4], 2)
    assert all(isinstance(x, Fraction) for row in M for x in row)
    assert det(M) == vandermonde_block([1, 2, 3, 4], 2) == 12


@pytest.mark.parametrize("d,m", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_M_is_row_column_reduction_of_UV(d, m):
    assert check_M_operations(symbolic_roots(d), m)


def test_detM_examples():
    assert check_detM_eq_detUV([2, 5], 1)
    assert check_detM_eq_detUV([1, 2, 3], 2)
    assert check_detM_eq_detUV(symbolic_roots(5), 2)


def test_lin_combo_examples():
    assert check_lin_combo([2, 3, 2, 5], 2)
    z = symbolic_roots(5)
    z[3] = z[0]
    assert check_lin_combo(z, 3)
    z = symbolic_roots(3)
    z[1] = z[0]
    assert check_lin_combo(z, 1)
    with pytest.raises(ValueError):
        check_lin_combo([1, 2, 3, 4], 2)


def test_factorization_examples():
    assert check_factorization(symbolic_roots(2), 1)
    assert check_factorization(symbolic_roots(4), 2)
    for k in range(3):
        assert check_factorization(random_roots(case_rng(5, k), 6), 3)


@given(st.integers(2, 6).flatmap(lambda d: st.tuples(st.integers(1, min(4, d - 1)), distinct_roots(d, d))))
def test_factorization_random(args):
    m, roots = args
    assert check_factorization(roots, m)
    assert check_detM_eq_detUV(roots, m)


@pytest.mark.parametrize("d,m", [(3, 2), (4, 2), (4, 3), (5, 2)])
def test_tail_degrees(d, m):
    rep = tail_degree_report(d, m)
    assert set(rep["degrees"].values()) == {m}
    assert rep["top_coefficient"] == 1
    assert substitution_vanishes(d, m)


def test_factored_det_vanishes_on_collision():
    spec = PolySpec(Fraction(1), (Fraction(2), Fraction(3), Fraction(2)))
    assert factored_det(spec, 2, (1, 2)) == 0


def test_factored_det_worked_value():
    spec = PolySpec.monic([1, 2, 3])
    assert spec.a(2) == -6 and spec.a(3) == 1
    # the formula read with the raw coefficient a_2
    assert factored_det(spec, 2, (1, 2), normalized=False) == Fraction(1, 648)
    # measured against a_0, which is what the Jacobian sees
    assert factored_det(spec, 2, (1, 2)) == Fraction(1, 18)


def test_factored_det_m1():
    spec = PolySpec(Fraction(1), tuple(Fraction(r) for r in (1, 2, 3, 5)))
    z = spec.roots
    expected = (z[1] - z[0]) * (z[2] - z[0]) * (z[3] - z[0]) / (spec.a(1) / spec.a(0) * 30)
    assert factored_det(spec, 1) == expected


def test_factored_det_zero_am():
    spec = PolySpec(Fraction(1), (Fraction(1), Fraction(-1)))
    with pytest.raises(ZeroCoefficient):
        factored_det(spec, 1)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_exact_jacobian_matches_factored_det(d):
    for k in range(3):
        spec = PolySpec(Fraction(k + 1), tuple(random_roots(case_rng(d, k), d)))
        if spec.a(1) == 0 or spec.a(2) == 0:
            continue
        for sel in combinations(range(1, d + 1), 2):
            J = jacobian_exact_m2(spec, build_alpha(2, spec, sel))
            assert det(J) == factored_det(spec, 2, sel)


def test_numeric_jacobian_roots123():
    spec = PolySpec.monic([1, 2, 3])
    a = build_alpha(2, spec, (1, 2))
    _, dj, resid = jacobian_numeric_m2(spec, a)
    assert resid == 0
    assert abs(dj - 1 / 18) / (1 / 18) < 1e-6


def test_numeric_jacobian_collision_is_near_zero():
    spec = PolySpec.monic([1, 2, 1])
    a = build_alpha(2, spec, (1, 2))
    _, dj, _ = jacobian_numeric_m2(spec, a)
    assert abs(dj) < 1e-7


def test_numeric_jacobian_d4():
    spec = PolySpec.monic([-3, 1, 4, 6])
    for a in v_set(2, spec):
        _, dj, _ = jacobian_numeric_m2(spec, a)
        exact = float(factored_det(spec, 2, a.selection))
        assert abs(dj - exact) / abs(exact) < 1e-6


def test_numeric_jacobian_needs_m2():
    spec = PolySpec.monic([1, 2, 3, 4])
    with pytest.raises(ValueError):
        jacobian_numeric_m2(spec, build_alpha(3, spec, (1, 2, 3)))
