import pytest
from hypothesis import given, settings, strategies as st

from segalbench.fingroups import cyclic_group, regular_action, trivial_action, trivial_group
from segalbench.homology import reduced_homology
from segalbench.simplicial import (BASE, SimplicialHomotopy, SimplicialMap, check_simplicial, constant_homotopy,
                                   fixed_points, identity, is_homotopy, orbit_quotient, simplex, smash, sphere,
                                   sphere_n, wedge)

C2 = cyclic_group(2)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_spheres_are_simplicial(k):
    assert check_simplicial(sphere_n(k, 3)) == []


def test_sphere_sizes():
    # S^k_q = {base} + q^k points
    assert sphere_n(2, 3).sizes() == [1, 2, 5, 10]


@pytest.mark.parametrize("k", [1, 2])
def test_sphere_homology(k):
    h = reduced_homology(sphere_n(k, k + 1), k)
    assert h.ranks == [0] * k + [1]


def test_circle_smash_circle():
    # two nondegenerate 2-simplices in the product model of S^1 ^ S^1
    S = smash(sphere_n(1, 3), sphere_n(1, 3))
    assert [len(S.nondegenerate(q)) for q in range(4)] == [0, 1, 2, 0]
    assert reduced_homology(S, 2).ranks == [0, 0, 1]


def test_wedge_homology():
    W = wedge(sphere_n(1, 2), sphere_n(1, 2))
    assert check_simplicial(W) == []
    assert reduced_homology(W, 1).ranks == [0, 2]


def test_regular_sphere_fixed_points():
    S = sphere(regular_action(C2), 3)
    assert check_simplicial(S) == []
    F = fixed_points(S, (0, 1))
    # the diagonal circle
    assert reduced_homology(F, 1).ranks == [0, 1]


def test_orbit_quotient_swap():
    S = sphere(regular_action(C2), 2)

    def moves(q, x):
        return [S.act(1, q, x)]
    Q = orbit_quotient(S, moves)
    assert check_simplicial(Q) == []
    assert len(Q.levels[1]) == 2


def test_simplex_contractible():
    D = simplex(2, 3)
    assert check_simplicial(D) == []
    assert reduced_homology(D, 2).ranks == [0, 0, 0]


def test_identity_homotopy():
    S = sphere_n(1, 3)
    assert is_homotopy(constant_homotopy(identity(S)))


def test_wrong_homotopy_rejected():
    S = sphere_n(1, 3)
    bad = SimplicialHomotopy(S, S, lambda q, x: x, lambda q, x: x, lambda q, j, x: S.degen(q, 0, x))
    assert not is_homotopy(bad)


def test_map_check_detects_non_simplicial():
    S = sphere_n(1, 2)
    f = SimplicialMap(S, S, lambda q, x: (1, 1) if q == 1 else x)
    assert f.check()


@given(st.integers(0, 2), st.integers(0, 2), st.integers(1, 3))
@settings(max_examples=15, deadline=None)
def test_smash_of_spheres(a, b, D):
    S = smash(sphere_n(a, D), sphere_n(b, D))
    assert check_simplicial(S) == []
