from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nrslab.errors import NotInB
from nrslab.graphs import (
    DsgMatrix,
    as_seq,
    decode,
    dsg_weight_sum,
    dsg_weight_sum_brute,
    encode,
    enumerate_dsg,
    is_in_B,
    is_size_bounded,
    check_simple_graph_gen,
    reduce_R,
    rho1,
    rho2,
    size_bounded_sequences,
)
from nrslab.jacobian import symbolic_roots

from conftest import distinct_roots


def test_enumeration_counts():
    assert len(list(enumerate_dsg(1))) == 1
    assert len(list(enumerate_dsg(3))) == 27
    assert len(set(enumerate_dsg(4))) == 729


def test_dsg_validation():
    with pytest.raises(ValueError):
        DsgMatrix(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        DsgMatrix(((1,),))
    M = DsgMatrix.from_edges(3, [(1, 2), (3, 1)])
    assert M.edges() == [(1, 2), (3, 1)]


def test_weight_sum_examples():
    z = symbolic_roots(2)
    assert dsg_weight_sum(3, 0, symbolic_roots(3)) == 1
    assert dsg_weight_sum(2, 1, z) == z[0] + z[1]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_weight_sum_generating_function_matches_enumeration(d):
    z = symbolic_roots(d)
    for l in range(comb(d, 2) + 1):
        assert dsg_weight_sum(d, l, z) == dsg_weight_sum_brute(d, l, z)


@pytest.mark.parametrize("d", [2, 3])
def test_identity_symbolic(d):
    z = symbolic_roots(d)
    assert all(check_simple_graph_gen(d, l, z, brute=True) for l in range(comb(d, 2) + 1))


def test_identity_d4_rational():
    assert all(check_simple_graph_gen(4, l, [1, 2, 3, 4]) for l in range(7))


@given(distinct_roots(5, 5), st.integers(0, 10))
def test_identity_d5_random(roots, l):
    assert check_simple_graph_gen(5, l, roots)


def test_identity_fails_with_wrong_weights():
    from nrslab.graphs import simple_graph_rhs

    assert simple_graph_rhs(3, 2, [1, 2, 3]) == dsg_weight_sum(3, 2, [1, 2, 3])
    assert simple_graph_rhs(3, 2, [1, 2, 3]) != dsg_weight_sum(3, 2, [1, 2, 4])


def test_encode_base_cases():
    assert encode(DsgMatrix(((0,),))) == ()
    assert decode(()) == DsgMatrix(((0,),))


def test_B_membership_examples():
    assert is_in_B(())
    assert not is_in_B(as_seq([{1, 2}]))
    assert not is_size_bounded(as_seq([{1, 2}]))
    for M in enumerate_dsg(4):
        assert is_in_B(encode(M), 4)


def test_reduce_R_drops_last_set_when_absent():
    sigma = as_seq([{1}, {2}])
    assert reduce_R(sigma, 3) == as_seq([{1}])
    assert reduce_R(as_seq([{2}, {1, 3}, {3}]), 3) == as_seq([{2}, set()])


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_bijection_exhaustive(r):
    images = set()
    for M in enumerate_dsg(r):
        s = encode(M)
        assert decode(s) == M
        assert rho1(s, r) == rho2(M)
        images.add(s)
    assert len(images) == 3 ** comb(r, 2)
    in_B = [s for s in size_bounded_sequences(r - 1, r) if is_in_B(s, r)]
    assert set(in_B) == images


def test_decode_rejects_outside_B():
    with pytest.raises(NotInB):
        decode(as_seq([{1, 2}]))
    bad = [s for s in size_bounded_sequences(2, 3) if not is_in_B(s, 3)]
    assert bad
    with pytest.raises(NotInB):
        decode(bad[0])


def test_size_bounded_count():
    assert len(list(size_bounded_sequences(2, 3))) == 4 * 7
