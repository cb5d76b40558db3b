import math

import pytest
from hypothesis import given, settings, strategies as st

from segalbench.fingroups import (BasedMap, all_perms, all_subgroups_product, compose_based, cyclic_group,
                                  enumerate_homs, graph_subgroups, group_from_spec, identity_map, lex_index,
                                  parse_group_name, product_group, regular_action, smash_based,
                                  symmetric_group, trivial_group)

N_MAX = 3


def based_map(m, n):
    return st.tuples(*[st.integers(0, n)] * m).map(lambda im: BasedMap(m, n, im))


@st.composite
def composable(draw):
    a, b, c = (draw(st.integers(1, N_MAX)) for _ in range(3))
    return draw(based_map(a, b)), draw(based_map(b, c))


def test_group_tables():
    for G in (cyclic_group(4), symmetric_group(3), product_group(cyclic_group(2), cyclic_group(3))):
        assert all(G.mul(g, G.inv(g)) == 0 for g in G.elements)
    assert symmetric_group(3).order == 6
    with pytest.raises(ValueError):
        from segalbench.fingroups import FinGroup
        FinGroup([[0, 1], [0, 1]])


def test_parse_group_names():
    assert parse_group_name("e").is_trivial()
    assert parse_group_name("C2xC2").order == 4
    assert parse_group_name("S3").order == 6
    assert group_from_spec({"kind": "cyclic", "n": 5}).order == 5
    with pytest.raises(ValueError):
        parse_group_name("Q8")


def test_hom_counts():
    # F(m, n) has (n+1)^m based maps; Pi: injective on the nonzero part; Sigma: bijections
    for m in range(4):
        for n in range(4):
            assert len(enumerate_homs("F", m, n)) == (n + 1) ** m
            assert len(enumerate_homs("Sigma", m, n)) == (math.factorial(n) if m == n else 0)
            assert len(enumerate_homs("N", m, n)) == (1 if m == n else 0)
            pi = sum(math.comb(m, k) * math.perm(n, k) for k in range(min(m, n) + 1))
            assert len(enumerate_homs("Pi", m, n)) == pi


def test_lex_index():
    assert [lex_index(i, j, 3) for i in (1, 2) for j in (1, 2, 3)] == [1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize("G,n,count", [
    (trivial_group(), 3, 1), (cyclic_group(2), 2, 3), (cyclic_group(2), 3, 5),
    (cyclic_group(3), 3, 4), (symmetric_group(3), 2, 10),
])
def test_graph_subgroup_counts(G, n, count):
    # sum over subgroups H of |Hom(H, Sigma_n)|
    assert len(graph_subgroups(G, n)) == count


def test_graph_subgroups_match_brute_force():
    G = cyclic_group(2)
    for n in (2, 3):
        ident = all_perms(n)[0]
        brute = {tuple(sorted(S)) for S in all_subgroups_product(G, n)
                 if all(g != 0 or s == ident for g, s in S)}
        assert brute == {L.elements for L in graph_subgroups(G, n)}


def test_regular_action_is_free():
    G = symmetric_group(3)
    a = regular_action(G)
    assert all(a(g, i) != i for g in G.elements if g for i in range(1, 7))


@given(composable(), composable())
@settings(max_examples=150, deadline=None)
def test_smash_functorial(fg1, fg2):
    f1, g1 = fg1
    f2, g2 = fg2
    lhs = smash_based(compose_based(g1, f1), compose_based(g2, f2))
    rhs = compose_based(smash_based(g1, g2), smash_based(f1, f2))
    assert lhs == rhs


@given(st.integers(1, N_MAX).flatmap(lambda m: st.integers(1, N_MAX).flatmap(lambda n: based_map(m, n))),
       st.integers(1, N_MAX), st.integers(1, N_MAX).flatmap(lambda m: based_map(m, 2)))
@settings(max_examples=100, deadline=None)
def test_smash_unit_and_associative(f, k, h):
    assert smash_based(f, identity_map(1)) == f
    assert smash_based(identity_map(1), f) == f
    g = identity_map(k)
    assert smash_based(smash_based(f, g), h) == smash_based(f, smash_based(g, h))
