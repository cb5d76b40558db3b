import pytest
from hypothesis import given, settings, strategies as st

from segalbench.abgroups import AbGroup, Z2_ring
from segalbench.fingroups import trivial_action, trivial_group
from segalbench.indexdiagrams import R_diagram, free_diagram, unit_diagram
from segalbench.monoidal import (bpq_mu, check_coherence, day_smash_free, day_smash_generated, em_ring_pairing,
                                 free_bar, free_pairing, generation_certificate, h_map, lemma_coequalizer_iso,
                                 levelwise_certificate, n_variant_symmetry_failure, phi_checks, R_monoidal)
from segalbench.simplicial import sphere

E = trivial_group()


def s(k, D):
    S = sphere(trivial_action(E, k), D)
    S.name = f"S{k}"
    return S


def test_external_pairings_natural():
    assert free_pairing(free_diagram(s(0, 1), 2), free_diagram(s(1, 1), 2)).check(N=2) == []
    pairing, T = R_monoidal(AbGroup([2]), AbGroup([4]), 2)
    assert T.result.orders == (2,)
    assert pairing.check() == []


def test_h_map_natural():
    _, _, errs = h_map([1, 2], 2)
    assert errs == []


def test_day_convolution_of_free_diagrams():
    assert day_smash_free(s(0, 1), s(1, 1), N=2)["iso"]


def test_generation_certificate():
    I = unit_diagram(2, 0)
    assert generation_certificate(I, 1)
    # R(Z/2) is not generated in degree 0
    assert not generation_certificate(R_diagram(Z2_ring(), 2, 0), 0)
    with pytest.raises(ValueError):
        day_smash_generated(R_diagram(Z2_ring(), 2, 0), I, 0, 1)


def test_levelwise_certificate():
    assert not any(levelwise_certificate(n_max=2, D=2).values())


def test_coherence_small_exhaustive():
    rep = check_coherence([s(0, 1), s(1, 1)], N=2, Q=1, D=1, budget=10 ** 6)
    for name, r in rep.items():
        assert not r["failures"], name
        assert not r["sampled"], name
    assert rep["assoc"]["checked"] > 0 and rep["symmetry"]["checked"] > 0


def test_phi_simplicial_and_descends():
    B = free_bar(s(1, 2), 2, 1, 2)
    assert phi_checks(B, B, [(q, p) for q in range(2) for p in range(3)], budget=400) == []


def test_nonsymmetric_variant_breaks_symmetry():
    w = n_variant_symmetry_failure(s(0, 1), s(0, 1))
    assert w is not None and w[0] == 0


def test_bpq_small():
    b = bpq_mu(s(0, 2), s(1, 2), 2, 2, 2)
    assert all(all(r.values()) for r in b.rows().values())
    h1, h2 = b.homology()
    assert h1 == h2 and str(h1) == "H_0 = 0; H_1 = Z"


@pytest.mark.parametrize("k", [0, 1])
def test_coequalizer_lemma(k):
    out = lemma_coequalizer_iso(s(1, 2), s(k, 2), 2, 2)
    assert out["bijective"] and not out["errors"]


def test_em_ring_pairing():
    r = em_ring_pairing(Z2_ring(), 2, 1, 1).check(qmax=1, dmax=1)
    assert not (r["assoc"] or r["unit_left"] or r["unit_right"])
    with pytest.raises(ValueError):
        em_ring_pairing(AbGroup([2]))


@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))
@settings(max_examples=8, deadline=None)
def test_coherence_on_sampled_cells(a, b, seed):
    rep = check_coherence([s(a, 1), s(b, 1)], N=2, Q=1, D=1, budget=200, seed=seed)
    assert not any(r["failures"] for r in rep.values())
