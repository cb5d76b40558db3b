import pytest

from segalbench.abgroups import Z2_ring
from segalbench.barmachine import (CorruptedBar, EMPTY, Monad, ObjectBar, check_comparison, check_reedy,
                                   check_structure_maps, demo_N_failure, eps_eta_homotopy, iso_r, machine,
                                   map_p, map_q, monad_laws, tensor_with_space)
from segalbench.fingroups import cyclic_group, regular_action, trivial_action, trivial_group
from segalbench.homology import reduced_homology
from segalbench.indexdiagrams import IndexCategory, RG_diagram, R_diagram, restrict, unit_diagram
from segalbench.simplicial import check_simplicial, simplex

C2 = cyclic_group(2)
E = trivial_group()


@pytest.fixture(scope="module")
def comparisons():
    Y = RG_diagram(Z2_ring(C2), 2, 0)
    return map_q(Y, 2), map_p(Y, 2)


@pytest.fixture(scope="module")
def small():
    Y = RG_diagram(Z2_ring(C2), 2, 0)
    return map_q(Y, 1), map_p(Y, 1)


def test_object_bar_sizes(comparisons):
    (BN, BS, _), (Bt, _, _) = comparisons
    d = (1, 0)
    assert [len(BN.level(d, q, 0)) for q in range(3)] == [20, 320, 5348]
    assert [len(BS.level(d, q, 0)) for q in range(3)] == [7, 30, 140]
    assert [len(Bt.level(d, q, 0)) for q in range(3)] == [27, 512, 9982]


def test_object_bar_rows_simplicial(small):
    (BN, BS, _), _ = small
    for B in (BN, BS):
        for d in B.targets:
            assert check_simplicial(B.row(d, 0)) == []


def test_comparison_maps(small):
    (BN, BS, qf), (Bt, Bs, pf) = small
    for src, tgt, fn in ((BN, BS, qf), (Bt, Bs, pf)):
        assert not any(check_comparison(src, tgt, fn).values())


def test_wrong_comparison_rejected(small):
    (BN, BS, _), _ = small
    r = check_comparison(BN, BS, lambda d, q, p, z: EMPTY)
    assert r["eps"] and r["surjective"]


def test_reedy_and_corrupted_control(comparisons):
    (BN, BS, _), (Bt, _, _) = comparisons
    assert check_reedy(BN) and check_reedy(BS) and check_reedy(Bt)
    assert not check_reedy(CorruptedBar(BS, (2, 1), 1, 0))


def test_times_variant_only_over_N():
    Y = RG_diagram(Z2_ring(C2), 2, 0)
    with pytest.raises(ValueError):
        ObjectBar(IndexCategory("Sigma_G", 2, group=C2), Y, 1, variant="times")


def test_iso_r_small():
    X = R_diagram(Z2_ring(C2), 2, 0)
    out = iso_r(X, C2, 2, 1)
    assert not any(out["checks"].values())
    assert [(d, q, a) for d, q, p, a, b in out["sizes"]] == [
        ((1, 0), 0, 7), ((1, 0), 1, 30), ((2, 0), 0, 16), ((2, 0), 1, 74), ((2, 1), 0, 16), ((2, 1), 1, 74)]


def test_eps_eta_homotopy_unit():
    _, res = eps_eta_homotopy(unit_diagram(2, 1), 2, 2)
    assert all(all(r.values()) for r in res.values())


def test_monad_laws():
    I = unit_diagram(2, 0)
    for ground in ("Sigma", "Pi", "N"):
        E_ = Monad(IndexCategory(ground, 2), IndexCategory("F", 2))
        assert not any(monad_laws(E_, restrict(I, E_.ground)).values())
    with pytest.raises(ValueError):
        Monad(IndexCategory("F", 2), IndexCategory("Sigma", 2))


def test_n_failure():
    r = demo_N_failure(C2)
    assert r["sizes"] == {"regular": 1, "trivial": 3}
    with pytest.raises(ValueError):
        demo_N_failure(E)


def test_machine_sizes_and_structure_maps():
    V0, V1 = trivial_action(E, 0), trivial_action(E, 1)
    M = machine("S^Sigma", unit_diagram(2, 2), [V0, V1], 2, 2, 2)
    assert M.level(V0).sizes() == [5, 20, 92]
    assert M.level(V1).sizes() == [1, 20, 231]
    assert check_simplicial(M.level(V1)) == []
    assert check_structure_maps(M, V0, V1, V0) == []


def test_em_levels():
    V = trivial_action(E, 1)
    expected = {1: ([1, 2, 3], "H_0 = 0; H_1 = Z"), 2: ([1, 30, 352], "H_0 = 0; H_1 = Z/2")}
    for N, (sizes, h) in expected.items():
        L = machine("S^Sigma", R_diagram(Z2_ring(), N, 2), [V], N, 2, 2).level(V)
        assert L.sizes() == sizes
        assert str(reduced_homology(L, 1)) == h


@pytest.mark.parametrize("tag,size", [("S^Sigma_G", 30), ("S^N_G", 320), ("S~^N_G", 512)])
def test_equivariant_machine_levels(tag, size):
    V = trivial_action(C2, 1)
    L = machine(tag, RG_diagram(Z2_ring(C2), 2, 1), [V], 2, 1, 1).level(V)
    assert L.sizes() == [1, size]


def test_regular_sphere_level_is_equivariant():
    V = regular_action(C2)
    L = machine("S^Sigma_G", RG_diagram(Z2_ring(C2), 2, 1), [V], 2, 1, 1).level(V)
    assert check_simplicial(L) == []


def test_tensor_with_space():
    t = tensor_with_space(unit_diagram(2, 0), simplex(1, 2), trivial_action(E, 1), 2, 2, 2)
    assert t["bijective"] and not t["map errors"]
