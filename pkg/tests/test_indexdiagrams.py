import pytest

from segalbench.abgroups import AbGroup, Z2_ring
from segalbench.fingroups import cyclic_group, trivial_action
from segalbench.indexdiagrams import (IndexCategory, KanExtension, RG_diagram, R_diagram, check_diagram,
                                      free_diagram, is_special_discrete, kan_extend,
                                      prolongation_is_equivalence, restrict, segal_map, triangle_identities,
                                      unit_diagram)
from segalbench.simplicial import sphere

C2 = cyclic_group(2)


def test_category_objects():
    FG = IndexCategory("F_G", 2, group=C2)
    assert FG.objects == [(0, 0), (1, 0), (2, 0), (2, 1)]
    assert IndexCategory("Σ", 3).tag == "Sigma"
    assert FG.contains(IndexCategory("Sigma_G", 2, group=C2))
    assert not IndexCategory("Sigma", 2).contains(IndexCategory("F", 2))


def test_unit_values():
    I = unit_diagram(3, 0)
    # I(n) = n_+: basepoint and n points
    assert [len(I.elements(n, 0)) for n in range(4)] == [1, 2, 3, 4]
    assert check_diagram(I) == []


def test_R_values():
    X = R_diagram(AbGroup([3]), 2, 0)
    assert [len(X.elements(n, 0)) for n in range(3)] == [1, 3, 9]
    assert check_diagram(X) == []


def test_segal_map_of_R_is_bijective():
    X = R_diagram(Z2_ring(), 3, 0)
    for n in (1, 2, 3):
        d = segal_map(X, n)[0]
        assert len(set(d.values())) == len(d) == 2 ** n


def test_specialness():
    assert is_special_discrete(R_diagram(Z2_ring(), 3, 0))
    assert is_special_discrete(RG_diagram(Z2_ring(C2), 2, 0))
    # negative control: I(2) has 3 points, I(1)^2 has 4
    assert not is_special_discrete(unit_diagram(2, 0))


def test_kan_extension_along_identity_is_iso():
    X = R_diagram(Z2_ring(), 2, 0)
    assert prolongation_is_equivalence(X, X.cat)["unit"]


def test_prolongation_to_FG():
    X = R_diagram(Z2_ring(C2), 2, 0)
    FG = IndexCategory("F_G", 2, group=C2)
    P = kan_extend(X, FG)
    # P X(n, alpha) = X(n) as a set, with G permuting coordinates through alpha
    assert [len(P.elements(c, 0)) for c in FG.objects] == [1, 2, 4, 4]
    assert check_diagram(P) == []
    eq = prolongation_is_equivalence(X, FG, P)
    assert eq["unit"] and eq["counit"]
    assert not any(triangle_identities(X, FG).values())


def test_unsmashed_extension_keeps_zero_maps():
    I = unit_diagram(2, 0)
    F = IndexCategory("F", 2)
    U = restrict(I, IndexCategory("N", 2))
    based = KanExtension(U, F)
    unbased = KanExtension(U, F, smash=False)
    assert len(unbased.elements(2, 0)) > len(based.elements(2, 0))


def test_free_diagram_on_circle():
    X = free_diagram(sphere(trivial_action(C2, 1), 2), 2)
    assert check_diagram(X) == []


def test_restriction_rejects_bigger_category():
    with pytest.raises(ValueError):
        restrict(unit_diagram(2, 0), IndexCategory("F", 3))
