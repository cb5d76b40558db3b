"""Acceptance criteria 1-8.  One PASS/FAIL line per criterion is printed at the
end of the pytest run (see conftest.py) or when run as a script:

    python tests/test_acceptance.py
"""
import time

import pytest

from segalbench.abgroups import Z2_ring
from segalbench.barmachine import (CorruptedBar, Monad, check_comparison, check_reedy, demo_N_failure,
                                   eps_eta_homotopy, iso_r, machine, map_p, map_q, monad_laws,
                                   tensor_with_space)
from segalbench.fingroups import (all_perms, all_subgroups_product, cyclic_group, trivial_action,
                                  trivial_group)
from segalbench.homology import nerve_of_group, reduced_homology, stability_run
from segalbench.indexdiagrams import (IndexCategory, RG_diagram, R_diagram, check_diagram, free_diagram,
                                      is_special_discrete, kan_extend, prolongation_is_equivalence, restrict,
                                      triangle_identities, unit_diagram)
from segalbench.monoidal import (_cells, bpq_mu, check_coherence, em_ring_pairing, free_bar,
                                 lemma_coequalizer_iso, levelwise_certificate, n_variant_symmetry_failure)
from segalbench.fingroups import graph_subgroups
from segalbench.simplicial import check_simplicial, simplex, sphere

RESULTS = {}


def record(k, ok, msg):
    RESULTS[k] = (ok, msg)
    assert ok, msg


C2 = cyclic_group(2)
E = trivial_group()


def s(V, D, name):
    S = sphere(V, D)
    S.name = name
    return S


def test_criterion_1_iso_r():
    t0 = time.time()
    X = R_diagram(Z2_ring(C2), 2, 3)
    out = iso_r(X, C2, 2, 2)
    dt = time.time() - t0
    bad = {k: len(v) for k, v in out["checks"].items() if v}
    same = all(a == b for *_, a, b in out["sizes"])
    record(1, not bad and same and dt < 60,
           f"iso-r bijective, equivariant, faces, degeneracies, eps on {len(out['sizes'])} (d,q,p) cells "
           f"in {dt:.1f}s; failures {bad or 'none'}")


@pytest.fixture(scope="module")
def comparison_fixture():
    Y = RG_diagram(Z2_ring(C2), 2, 3)
    return map_q(Y, 2), map_p(Y, 2)


def test_criterion_2_comparisons(comparison_fixture):
    (BN, BS, qf), (Bt, Bs, pf) = comparison_fixture
    deg = range(4)
    rq = check_comparison(BN, BS, qf, deg)
    rp = check_comparison(Bt, Bs, pf, deg)
    bad = {f"q.{k}": len(v) for k, v in rq.items() if v}
    bad.update({f"p.{k}": len(v) for k, v in rp.items() if v})
    reedy = {n: check_reedy(B, deg) for n, B in (("B^N_G", BN), ("B^Sigma_G", BS), ("B~^N_G", Bt), ("B^N_G (p target)", Bs))}
    d = (2, 1)
    control = not check_reedy(CorruptedBar(BS, d, 1, 0), deg)
    ok = not bad and all(reedy.values()) and control
    record(2, ok, f"eps.q = eps, eps.p = eps, surjective, simplicial; reedy {reedy}; "
                  f"corrupted bar rejected: {control}; failures {bad or 'none'}")


def test_criterion_3_n_failure():
    r = demo_N_failure(C2)
    record(3, r["regular_is_point"] and not r["trivial_is_point"],
           f"P(I|N) at regular C2-set: {r['sizes']['regular']} simplex; at trivial: {r['sizes']['trivial']}")


@pytest.fixture(scope="module")
def coherence_run():
    S0 = s(trivial_action(E, 0), 3, "S0")
    S1 = s(trivial_action(E, 1), 3, "S1")
    t0 = time.time()
    rep = check_coherence([S0, S1], N=3, Q=2, D=3, budget=3000, seed=0)
    cert = levelwise_certificate(n_max=3, D=3)
    neg = n_variant_symmetry_failure(S0, S0)
    # size of the full enumeration the criterion asks for
    bars = [free_bar(A, 3, 2, 3) for A in (S0, S1)]
    full = {"assoc": 0, "symmetry": 0}
    for q, p in _cells(2, 3):
        n = sum(len(B.level(q, p)) - 1 for B in bars)
        full["assoc"] += n ** 3
        full["symmetry"] += n ** 2
    return rep, cert, neg, full, time.time() - t0


def test_criterion_4_no_counterexample(coherence_run):
    """Everything that is checked passes (exhaustive cells, samples, certificate, control)."""
    rep, cert, neg, _, _ = coherence_run
    fails = {k: len(v["failures"]) for k, v in rep.items() if v["failures"]}
    assert not fails, fails
    assert not any(cert.values()), {k: len(v) for k, v in cert.items() if v}
    assert neg is not None


def test_criterion_4_coherence(coherence_run):
    """The criterion asks for all simplices; the largest (q, p) cells cannot be enumerated."""
    rep, cert, neg, full, dt = coherence_run
    fails = {k: len(v["failures"]) for k, v in rep.items() if v["failures"]}
    sampled = {k: len(v["sampled"]) for k, v in rep.items() if v["sampled"]}
    clean = not fails and not any(cert.values()) and neg is not None
    checked = sum(v["checked"] for v in rep.values())
    msg = (f"no counterexample in {checked} checked tuples ({dt:.0f}s), levelwise certificate clean, "
           f"N-variant symmetry fails as expected; but cells sampled {sampled}: full enumeration needs "
           f"{full['assoc']:.2e} associativity triples and {full['symmetry']:.2e} symmetry pairs"
           if sampled else f"all cells exhaustive, {checked} tuples, failures {fails or 'none'}")
    record(4, clean and not sampled, msg)


def test_criterion_5_bpq():
    X = s(trivial_action(E, 0), 2, "S0")
    A = s(trivial_action(E, 1), 2, "S1")
    b = bpq_mu(X, A, 3, 3, 2)
    rows = b.rows()
    bad = sorted({k for r in rows.values() for k, v in r.items() if not v})
    dB, z, e = b.diagonal_maps()
    diag_ok = not z.check() and not e.check() and all(
        z(d, e(d, x)) == x for d in range(dB.dim + 1) for x in b.AX.levels[d])
    lem = lemma_coequalizer_iso(A, X, 3, 2)
    h_bar, h_ax = b.homology()
    ok = (not bad and diag_ok and lem["bijective"] and not lem["errors"]
          and h_bar == h_ax and h_bar.degree(1) == (1, []))
    record(5, ok, f"zeta.eta = id, extra degeneracy homotopy, coequalizer iso {lem['bijective']}; "
                  f"bar: {h_bar}; A^X: {h_ax}; row failures {bad or 'none'}")


def test_criterion_6_em():
    special_e = is_special_discrete(R_diagram(Z2_ring(E), 2, 0))
    special_g = is_special_discrete(RG_diagram(Z2_ring(C2), 2, 0))
    _, rows = eps_eta_homotopy(R_diagram(Z2_ring(), 2, 2), 2, 2)
    bad = sorted({k for r in rows.values() for k, v in r.items() if not v})
    r = em_ring_pairing(Z2_ring(), 2, 1, 2).check(qmax=1, dmax=2)
    ring_bad = {k: len(r[k]) for k in ("assoc", "unit_left", "unit_right") if r[k]}
    ok = special_e and special_g and not bad and not ring_bad and not r["sampled"]
    record(6, ok, f"special G=e {special_e}, G=C2 {special_g}; eps/eta homotopy failures {bad or 'none'}; "
                  f"ring pairing {r['checked']} triples exhaustive, failures {ring_bad or 'none'}")


def test_criterion_7_em_homology():
    oracle = reduced_homology(nerve_of_group(C2, 3), 1).degree(1)
    V = trivial_action(E, 1)

    def compute(N):
        M = machine("S^Sigma", R_diagram(Z2_ring(), N, 2), [V], N, 4, 2)
        return reduced_homology(M.level(V), 1)

    run = stability_run(compute, [2, 3], 1)
    hits = [N for N, h in run["results"].items() if h.degree(1) == oracle]
    record(7, bool(hits) and run["all_agree"],
           f"nerve oracle H_1 = Z/{oracle[1][0]}; " + ", ".join(f"N={N}: {h}" for N, h in run["results"].items())
           + f"; consecutive N agree: {run['all_agree']}")


def test_criterion_8_foundations():
    t0 = time.time()
    errs = {}
    N = 2
    FG = IndexCategory("F_G", N, group=C2)
    fixtures = [R_diagram(Z2_ring(C2), N, 0), unit_diagram(N, 1, group=C2),
                free_diagram(sphere(trivial_action(C2, 1), 1), N)]
    for X in fixtures:
        for k, v in triangle_identities(X, FG).items():
            if v:
                errs[f"{X.name} {k}"] = len(v)
        P = kan_extend(X, FG)
        eq = prolongation_is_equivalence(X, FG, P)
        if not (eq["unit"] and eq["counit"]):
            errs[f"{X.name} unit/counit"] = eq
        for Y in (X, P):
            e = check_diagram(Y)
            if e:
                errs[f"{Y.name} diagram"] = len(e)
    I = unit_diagram(N, 0)
    for ground in ("Sigma", "N", "Pi"):
        E_ = Monad(IndexCategory(ground, N), IndexCategory("F", N))
        for k, v in monad_laws(E_, restrict(I, E_.ground)).items():
            if v:
                errs[f"{ground} {k}"] = len(v)
    Ig = unit_diagram(N, 0, group=C2, cat_tag="F_G")
    for ground, variant in (("Sigma_G", "smash"), ("N_G", "smash"), ("N_G", "times")):
        E_ = Monad(IndexCategory(ground, N, group=C2), FG, variant)
        for k, v in monad_laws(E_, restrict(Ig, E_.ground)).items():
            if v:
                errs[f"{ground}/{variant} {k}"] = len(v)
    # simplicial identities on constructed objects
    M = machine("S^Sigma", R_diagram(Z2_ring(), 2, 2), [trivial_action(E, 1)], 2, 2, 2)
    Bq = free_bar(sphere(trivial_action(E, 0), 2), 2, 2, 2)
    objs = [M.level(trivial_action(E, 1)), Bq.row(1), Bq.column(1), nerve_of_group(C2, 3),
            sphere(trivial_action(C2, 2), 3)]
    for K in objs:
        e = check_simplicial(K)
        if e:
            errs[f"simplicial {K.name}"] = len(e)
    ident = all_perms(2)[0]
    count = len(graph_subgroups(C2, 2))
    brute = sum(1 for S in all_subgroups_product(C2, 2) if all(g != 0 or p == ident for g, p in S))
    if not count == brute == 3:
        errs["graph subgroups"] = (count, brute)
    t = tensor_with_space(unit_diagram(N, 0), simplex(1, 2), trivial_action(E, 0), N, 2, 2)
    if not t["bijective"] or t["map errors"]:
        errs["tensor with Delta[1]"] = t["map errors"][:3]
    record(8, not errs, f"monad laws, triangle identities, unit/counit isos, simplicial identities, "
                        f"graph subgroups C2 x Sigma_2 = {count} (brute {brute}), tensor iso "
                        f"({time.time() - t0:.1f}s); failures {errs or 'none'}")


def summary_lines():
    lines = []
    for k in range(1, 9):
        if k in RESULTS:
            ok, msg = RESULTS[k]
            lines.append(f"{'PASS' if ok else 'FAIL'} criterion {k}: {msg}")
        else:
            lines.append(f"FAIL criterion {k}: not run or raised")
    return lines


if __name__ == "__main__":
    import sys
    code = pytest.main([__file__, "-q", "-p", "no:terminal"] + sys.argv[1:])
    print("\n".join(summary_lines()))
