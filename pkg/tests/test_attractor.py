from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrslab.attractor import (
    build_alpha,
    certify_fixed_point,
    expr_at_alpha,
    expr_definitional,
    fixed_point_residuals,
    pt_closed,
    pt_composition,
    v_set,
)
from nrslab.errors import IndexOutOfRange, ZeroCoefficient, ZeroRoot
from nrslab.harness import random_roots, case_rng
from nrslab.laurent import SparseLaurent
from nrslab.polyspec import PolySpec
from nrslab.scalars import RatFunc

from conftest import distinct_roots


def spec_of(roots, a0=1):
    return PolySpec(Fraction(a0), tuple(Fraction(r) for r in roots))


def symbolic_spec(d):
    return PolySpec(RatFunc(1), tuple(RatFunc(SparseLaurent.var(f"z{i}")) for i in range(1, d + 1)))


def test_m1_is_the_root():
    spec = spec_of([Fraction(7, 2), 5])
    assert build_alpha(1, spec, (1,)).coords == (Fraction(7, 2),)


def test_alpha_d3_m2_first_coordinate():
    spec = spec_of([1, 2, 3])
    a = build_alpha(2, spec, (1, 2))
    assert a.coords[0] == 3
    # alpha_1 = h_0(1/z3) * (-a1/a2) * (a2/a0) * z1 z2
    assert a.coords[1] == -spec.a(1) / spec.a(2) * spec.a(2) / spec.a(0) * 2
    assert a.coords == (3, Fraction(11, 3))


def test_alpha_symbolic_d4_m2():
    spec = symbolic_spec(4)
    a = build_alpha(2, spec, (1, 2))
    z1, z2 = spec.roots[:2]
    assert a.coords[1] == (-spec.a(1) / spec.a(2)) * (spec.a(2) / spec.a(0)) * z1 * z2


def test_v_set_examples():
    pts = v_set(2, spec_of([1, 2, 3]))
    assert sorted(p.coords[0] for p in pts) == [3, 4, 5]
    assert len(v_set(2, spec_of([2, -1, 5, Fraction(1, 3)]))) == 6
    pts = v_set(2, spec_of([1, 2, 3, 4]))
    assert len({p.coords[0] for p in pts}) == 5
    assert len(pts) == 6  # (1,4) and (2,3) share alpha_0 but not alpha_1


def test_v_set_dedupes_equal_points():
    # repeated roots give identical coordinate vectors
    pts = v_set(1, spec_of([2, 2, 3]))
    assert len(pts) == 2


def test_pt_closed_examples():
    spec = spec_of([1, 2, 3])
    a = build_alpha(2, spec, (1, 2))
    assert pt_closed(a, 0).value == spec.a(1) / spec.a(2) + 3
    assert pt_closed(a, 1).value == 1 - spec.a(0) / (spec.a(2) * 2)
    assert pt_closed(a, 2).value == spec.a(0) * Fraction(1, 3) / (spec.a(2) * 2)
    with pytest.raises(IndexOutOfRange):
        pt_closed(a, 3)


def test_pt_composition_examples():
    spec = spec_of([1, 2, 3])
    a = build_alpha(2, spec, (1, 2))
    assert pt_composition(a, 1) == pt_closed(a, 1)
    # s = d - m + 1 keeps only the i = 0 term, which needs i + s >= 2
    assert pt_composition(a, 2).value == -spec.a(3) / spec.a(2)
    rng = case_rng(3, 0)
    spec5 = spec_of(random_roots(rng, 5))
    b = build_alpha(3, spec5, (1, 3, 5))
    assert pt_composition(b, 0) == pt_closed(b, 0)


@given(st.integers(2, 6).flatmap(lambda d: st.tuples(st.just(d), st.integers(1, min(4, d - 1)), distinct_roots(d, d))))
def test_pt_forms_agree(args):
    d, m, roots = args
    spec = spec_of(roots, 3)
    if spec.a(m) == 0:
        return
    for sel in combinations(range(1, d + 1), m):
        a = build_alpha(m, spec, sel)
        for s in range(d - m + 2):
            assert pt_closed(a, s) == pt_composition(a, s)
        assert certify_fixed_point(a)


@given(st.integers(2, 6).flatmap(lambda d: st.tuples(st.integers(1, d - 1), distinct_roots(d, d))))
def test_expr_definition_matches_closed_form(args):
    m, roots = args
    spec = spec_of(roots)
    if spec.a(m) == 0:
        return
    a = build_alpha(m, spec, tuple(range(1, m + 1)))
    for k in range(1, m + 1):
        assert expr_definitional(a, k) == expr_at_alpha(a, k)


def test_fixed_point_examples():
    for roots in ([5, -2], [1, 2, 3, 4]):
        spec = spec_of(roots)
        for a in v_set(1, spec):
            assert fixed_point_residuals(a) == [0]
    spec = spec_of([1, 2, 3])
    assert all(certify_fixed_point(a) for a in v_set(2, spec))
    spec6 = spec_of(random_roots(case_rng(11, 0), 6))
    pts = [build_alpha(3, spec6, s) for s in combinations(range(1, 7), 3)]
    assert len(pts) == 20 and all(certify_fixed_point(a) for a in pts)


def test_symbolic_fixed_point():
    spec = symbolic_spec(3)
    for a in v_set(2, spec):
        assert all(r == 0 for r in fixed_point_residuals(a))


def test_fixed_point_breaks_when_perturbed():
    spec = spec_of([1, 2, 3])
    a = build_alpha(2, spec, (1, 2))
    moved = type(a)(a.m, a.selection, (a.coords[0] + 1, a.coords[1]), spec)
    assert not certify_fixed_point(moved)


def test_errors():
    with pytest.raises(ZeroRoot):
        spec_of([0, 1])
    with pytest.raises(ValueError):
        build_alpha(3, spec_of([1, 2, 3]), (1, 2, 3))
    with pytest.raises(ValueError):
        build_alpha(2, spec_of([1, 2, 3]), (1, 1))
    # a_1 = -a_0 * sum(1/z) vanishes for roots 1, -1
    with pytest.raises(ZeroCoefficient):
        build_alpha(1, spec_of([1, -1]), (1,))
