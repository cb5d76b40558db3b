from hypothesis import given, settings, strategies as st

from segalbench.abgroups import (AbGroup, Tensor, Z2_ring, cyclic_ring, direct_sum, invariant_factors,
                                 tensor_ab, tensor_gcd_oracle)
from segalbench.fingroups import cyclic_group

orders = st.lists(st.integers(2, 12), min_size=1, max_size=3)


@given(orders, orders)
@settings(max_examples=60, deadline=None)
def test_tensor_matches_gcd_oracle(a, b):
    A, B = AbGroup(a), AbGroup(b)
    assert invariant_factors(tensor_ab(A, B)) == tensor_gcd_oracle(A, B)


@given(st.lists(st.integers(2, 6), min_size=1, max_size=2), st.lists(st.integers(2, 6), min_size=1, max_size=2))
@settings(max_examples=30, deadline=None)
def test_tensor_pairing_bilinear(a, b):
    A, B = AbGroup(a), AbGroup(b)
    T = Tensor(A, B)
    R = T.result
    for x in A.elements():
        for y in B.elements():
            for y2 in B.elements():
                assert R.add(T.pair(x, y), T.pair(x, y2)) == T.pair(x, B.add(y, y2))


def test_invariant_factors():
    assert invariant_factors(AbGroup([6, 4])) == [2, 12]
    assert invariant_factors(AbGroup([2, 3])) == [6]


def test_group_axioms():
    assert AbGroup([2, 4]).check() == []
    flip = AbGroup([3], group=cyclic_group(2), action=lambda g, x: ((-x[0]) % 3,))
    assert flip.check() == []
    assert direct_sum(flip, flip).check() == []


def test_rings():
    R = cyclic_ring(4)
    assert R.mult((2,), (3,)) == (2,) and R.one == (1,)
    assert Z2_ring(cyclic_group(2)).group.order == 2
