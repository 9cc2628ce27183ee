from fractions import Fraction
from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrslab.errors import SumMismatch
from nrslab.laurent import SparseLaurent
from nrslab.newton_series import (
    SubsetTuple,
    bin_sum,
    bounded_multisets,
    c_m,
    check_bin_sum,
    check_rec,
    check_s_exp,
    check_s_exp_2,
    check_t_su,
    contingency_tables,
    nonempty_subsets,
    s_exp_sides,
    subset_tuples,
    t_su_lhs,
)

d_sym = SparseLaurent.var("d")


def test_bin_sum_examples():
    assert bin_sum(3, 4, 0) == 1
    assert bin_sum(2, 3, 2) == 10 == comb(5, 2)


def test_bin_sum_exhaustive():
    assert all(check_bin_sum(a, b, l) for a in range(9) for b in range(9) for l in range(9))


def test_bin_sum_needs_the_zero_term():
    assert not check_bin_sum(2, 3, 2, start=1)


def test_contingency_tables():
    tables = list(contingency_tables((1, 1), (1, 1)))
    assert sorted(tables) == [((0, 1), (1, 0)), ((1, 0), (0, 1))]
    assert list(contingency_tables((4,), (1, 3))) == [((1, 3),)]
    with pytest.raises(SumMismatch):
        list(contingency_tables((1,), (2,)))


def test_rec_examples():
    assert check_rec((3,), (1, 2))
    assert check_rec((1, 1), (1, 1))


def test_rec_exhaustive():
    for A in range(7):
        for m in range(1, 4):
            for n in range(1, 4):
                for xs in product(range(A + 1), repeat=m):
                    if sum(xs) != A:
                        continue
                    for ys in product(range(A + 1), repeat=n):
                        if sum(ys) == A:
                            assert check_rec(xs, ys)


def test_subset_tuples():
    assert len(nonempty_subsets(3)) == 7
    tuples = list(subset_tuples((1, 1)))
    assert len(tuples) == 2  # {1},{2} once each, or {1,2} once
    with pytest.raises(ValueError):
        SubsetTuple(2, ((frozenset({1}), 1),))


def test_t_su_examples():
    assert t_su_lhs(5, (2,)) == Fraction(5 * 4, factorial(2))
    assert check_t_su(4, (1, 2))
    assert t_su_lhs(4, (1, 2)) == 24


def test_t_su_exhaustive():
    for r in range(1, 4):
        for nu in product(range(4), repeat=r):
            for d in range(7):
                assert check_t_su(d, nu)


@pytest.mark.parametrize("nu", [(1,), (2, 1), (1, 1, 1), (3, 2)])
def test_t_su_symbolic_d(nu):
    assert check_t_su(d_sym, nu)


def test_bounded_multisets():
    assert list(bounded_multisets(2, 2)) == [()]
    assert list(bounded_multisets(2, 0)) == [(1, 1), (1, 2)]
    assert list(bounded_multisets(1, 3)) == [()]


def test_s_exp_examples():
    assert check_s_exp(0, [], d_sym)
    lhs, rhs = s_exp_sides(2, [1, 1], d_sym)
    assert lhs == rhs == (d_sym + 1) * (d_sym + 1)


@given(st.integers(0, 5), st.lists(st.integers(-4, 6), min_size=5, max_size=5))
def test_s_exp_random_integers(m, s):
    assert check_s_exp(m, s, d_sym)


def test_s_exp_symbolic():
    s = [SparseLaurent.var(f"s{j}") for j in range(1, 6)]
    assert all(check_s_exp(m, s, d_sym) for m in range(5))


def test_s_exp_2_examples():
    y = SparseLaurent.var("y")
    x1 = SparseLaurent.var("x1")
    assert check_s_exp_2(0, [], y)
    assert check_s_exp_2(1, [x1], y)


@given(st.integers(0, 5), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_s_exp_2_random(r, x):
    assert check_s_exp_2(r, x, SparseLaurent.var("y"))


def test_c_m_trivial():
    assert c_m(3, ()) == 1
