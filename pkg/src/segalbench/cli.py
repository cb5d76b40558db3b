"""Command line front end.

    segalbench verify iso-r|comparisons|coherence|bpq|em|foundations [flags]
    segalbench demo n-failure --group C2
    segalbench machine run [flags]
    segalbench describe cats [flags]
    segalbench run --config run.json

Config files are JSON with sections group, diagram, machine, suite (and
optional output).  Exit codes: 0 all checks pass, 1 some check fails,
2 configuration error.  SEGALBENCH_WORKERS > 1 runs checks in processes;
report order is always the declaration order.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .fingroups import parse_group_name, regular_action, trivial_action


class ConfigError(Exception):
    pass


DEFAULTS = {
    "iso-r": {"group": "C2", "trunc": 2, "qmax": 2, "dmax": 3},
    "comparisons": {"group": "C2", "trunc": 2, "qmax": 2, "dmax": 0},
    "n-failure": {"group": "C2"},
    "coherence": {"group": "e", "trunc": 3, "qmax": 2, "dmax": 3, "budget": 3000},
    "bpq": {"group": "e", "trunc": 3, "qmax": 3, "dmax": 2},
    "em": {"group": "C2", "trunc": 2, "qmax": 2, "dmax": 2},
    "foundations": {"group": "C2", "trunc": 2, "qmax": 2, "dmax": 1},
    "machine": {"group": "e", "trunc": 2, "qmax": 2, "dmax": 2, "tag": "S^Sigma", "spheres": [1]},
}

ANCHORS = {
    "iso-r": "B^{Sigma_G}(P X) -> P(B^Sigma X) is a natural isomorphism",
    "comparisons": "q: B^{N_G} -> B^{Sigma_G} and p: B~^{N_G,x} -> B^{N_G,^} commute with eps; bars are proper",
    "n-failure": "prolongation along N -> N_G is a point at nontrivial G-sets",
    "coherence": "phi is unital, associative and symmetric after passage to Sigma-orbits",
    "bpq": "B(A^., F^Sigma, .X) ~ A ^ X with zeta.eta = id and an extra degeneracy",
    "em": "R A is special; eps ~ eta on B(F^Sigma, F^Sigma, R A); ring pairings are coherent",
    "foundations": "monad laws, adjunction identities, graph subgroups, tensors with spaces",
    "machine": "homology of machine levels",
}


# ---------------------------------------------------------------------------
# config

def _positive(cfg, key, lo):
    v = cfg.get(key)
    if v is None:
        return
    vals = v if isinstance(v, list) else [v]
    for x in vals:
        if not isinstance(x, int) or x < lo:
            raise ConfigError(f"{key} must be an integer >= {lo}, got {x!r}")


def resolve(name, overrides):
    if name not in DEFAULTS:
        raise ConfigError(f"unknown check {name!r}; known: {', '.join(DEFAULTS)}")
    cfg = dict(DEFAULTS[name])
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    _positive(cfg, "trunc", 1)
    _positive(cfg, "qmax", 0)
    _positive(cfg, "dmax", 0)
    try:
        cfg["G"] = parse_group_name(cfg["group"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = set(data) - {"group", "diagram", "machine", "suite", "output"}
    if unknown:
        raise ConfigError(f"{path}: unknown sections {sorted(unknown)}")
    return data


def config_to_runs(data):
    """[(check name, overrides)] in declaration order."""
    suite = data.get("suite", [])
    if isinstance(suite, str):
        suite = [s for s in suite.split(",") if s]
    common = {}
    if "group" in data:
        common["group"] = data["group"]
    if "diagram" in data:
        common["diagram"] = data["diagram"]
    runs = []
    for name in suite:
        ov = dict(common)
        if name == "machine" or name in ("iso-r", "comparisons", "coherence", "bpq", "em"):
            ov.update({k: v for k, v in data.get("machine", {}).items()
                       if name == "machine" or k in ("trunc", "qmax", "dmax")})
        runs.append((name, ov))
    return runs


# ---------------------------------------------------------------------------
# diagrams from specs

def build_diagram(spec, G, N, D, over_G=False):
    from .abgroups import AbGroup, cyclic_ring
    from .indexdiagrams import RG_diagram, R_diagram, free_diagram, point_diagram, unit_diagram
    from .simplicial import sphere
    spec = spec or {"kind": "R", "orders": [2]}
    kind = spec.get("kind")
    tag = "F_G" if over_G else "F"
    if kind == "R":
        orders = spec.get("orders", [2])
        A = cyclic_ring(orders[0], G) if len(orders) == 1 else AbGroup(orders, group=G)
        return RG_diagram(A, N, D) if over_G else R_diagram(A, N, D)
    if kind == "free":
        S = sphere(trivial_action(G, int(spec.get("sphere", 0))), D)
        return free_diagram(S, N, tag)
    if kind == "unit":
        return unit_diagram(N, D, G, tag)
    if kind == "point":
        return point_diagram(N, D, G, tag)
    raise ConfigError(f"unknown diagram kind {kind!r}")


def sphere_rep(G, s):
    if s == "regular":
        return regular_action(G)
    try:
        return trivial_action(G, int(s))
    except (TypeError, ValueError):
        raise ConfigError(f"unsupported sphere {s!r}") from None


# ---------------------------------------------------------------------------
# checks: each returns a list of (name, ok, data)

def _errs(d):
    return {k: len(v) for k, v in d.items()}


def check_iso_r(cfg):
    from .barmachine import iso_r
    G, N = cfg["G"], cfg["trunc"]
    X = build_diagram(cfg.get("diagram"), G, N, cfg["dmax"])
    out = iso_r(X, G, N, cfg["qmax"])
    res = []
    for k, v in out["checks"].items():
        res.append((f"iso-r/{k}", not v, {"failures": len(v), "witness": repr(v[0]) if v else None}))
    sizes = {}
    for d, q, p, a, b in out["sizes"]:
        sizes.setdefault(f"{d} q={q}", set()).update({a, b})
    res.append(("iso-r/cardinalities", all(a == b for *_, a, b in out["sizes"]),
                {"sizes": {k: sorted(v) for k, v in sizes.items()}}))
    return res


def check_comparisons(cfg):
    from .barmachine import CorruptedBar, check_comparison, check_reedy, map_p, map_q
    G, N, Q = cfg["G"], cfg["trunc"], cfg["qmax"]
    Y = build_diagram(cfg.get("diagram"), G, N, cfg["dmax"], over_G=True)
    deg = range(cfg["dmax"] + 1)
    res = []
    BN, BS, qf = map_q(Y, Q)
    r = check_comparison(BN, BS, qf, deg)
    res.append(("comparisons/q eps-triangle", not r["eps"], {"failures": len(r["eps"])}))
    res.append(("comparisons/q surjective", not r["surjective"], {"failures": len(r["surjective"])}))
    res.append(("comparisons/q simplicial and equivariant",
                not (r["faces"] or r["degeneracies"] or r["equivariant"]), _errs(r)))
    Bt, Bs, pf = map_p(Y, Q)
    r = check_comparison(Bt, Bs, pf, deg)
    res.append(("comparisons/p eps-triangle", not r["eps"], {"failures": len(r["eps"])}))
    res.append(("comparisons/p surjective", not r["surjective"], {"failures": len(r["surjective"])}))
    res.append(("comparisons/p simplicial and equivariant",
                not (r["faces"] or r["degeneracies"] or r["equivariant"]), _errs(r)))
    for B in (BN, BS, Bt):
        res.append((f"comparisons/reedy {B.name}", check_reedy(B, deg), {}))
    d = next(t for t in BS.targets if BS.ambient.card(t) > 0)
    res.append(("comparisons/reedy detects a corrupted degeneracy",
                not check_reedy(CorruptedBar(BS, d, 1, 0), deg), {}))
    return res


def check_n_failure(cfg):
    from .barmachine import demo_N_failure
    G = cfg["G"]
    if G.is_trivial():
        raise ConfigError("demo n-failure needs a nontrivial group")
    r = demo_N_failure(G)
    return [("n-failure/regular is a point", r["regular_is_point"], r["sizes"]),
            ("n-failure/trivial is not a point", not r["trivial_is_point"], {"report": r["report"]})]


def check_coherence_suite(cfg):
    from .monoidal import check_coherence, levelwise_certificate, n_variant_symmetry_failure, phi_checks, free_bar
    from .simplicial import sphere
    G = cfg["G"]
    N, Q, D = cfg["trunc"], cfg["qmax"], cfg["dmax"]
    S0 = sphere(trivial_action(G, 0), D)
    S0.name = "S0"
    S1 = sphere(trivial_action(G, 1), D)
    S1.name = "S1"
    rep = check_coherence([S0, S1], N, Q, D, budget=cfg.get("budget", 3000))
    res = []
    for k, v in rep.items():
        res.append((f"coherence/{k}", not v["failures"],
                    {"checked": v["checked"], "exhaustive_cells": len(v["exhaustive"]),
                     "sampled_cells": len(v["sampled"]),
                     "witness": repr(v["failures"][0]) if v["failures"] else None}))
    cert = levelwise_certificate(n_max=3, D=D)
    res.append(("coherence/levelwise certificate", not any(cert.values()), _errs(cert)))
    B = free_bar(S1, min(N, 2), min(Q, 2), min(D, 2))
    errs = phi_checks(B, B, [(q, p) for q in range(B.qmax + 1) for p in range(B.pmax + 1)], budget=300)
    res.append(("coherence/phi simplicial and orbit descent", not errs, {"failures": len(errs)}))
    w = n_variant_symmetry_failure(S0, S0)
    res.append(("coherence/N-variant symmetry fails (negative control)", w is not None,
                {"witness": repr(w[2:4]) if w else None}))
    return res


def check_bpq(cfg):
    from .monoidal import bpq_mu, lemma_coequalizer_iso
    from .simplicial import sphere
    G = cfg["G"]
    N, Q, D = cfg["trunc"], cfg["qmax"], cfg["dmax"]
    X = sphere(trivial_action(G, 0), D)
    A = sphere(trivial_action(G, 1), D)
    b = bpq_mu(X, A, N, Q, D)
    rows = b.rows()
    res = []
    for key in ("zeta.eta = id", "zeta simplicial", "eta simplicial", "extra degeneracy", "homotopy"):
        res.append((f"bpq/{key}", all(r[key] for r in rows.values()), {}))
    dB, z, e = b.diagonal_maps()
    ok = not z.check() and not e.check() and all(z(d, e(d, s)) == s for d in range(dB.dim + 1)
                                                 for s in b.AX.levels[d])
    res.append(("bpq/diagonal zeta.eta = id", ok, {}))
    lem = lemma_coequalizer_iso(A, X, N, D)
    res.append(("bpq/coequalizer identification", lem["bijective"] and not lem["errors"], {"sizes": lem["sizes"]}))
    h1, h2 = b.homology()
    res.append(("bpq/homology agrees", h1 == h2, {"bar": h1.lines(), "A^X": h2.lines()}))
    return res


def check_em(cfg):
    from .abgroups import Z2_ring
    from .barmachine import eps_eta_homotopy
    from .fingroups import trivial_group
    from .indexdiagrams import RG_diagram, R_diagram, is_special_discrete
    from .monoidal import em_ring_pairing
    G, N, Q, D = cfg["G"], cfg["trunc"], cfg["qmax"], cfg["dmax"]
    res = []
    res.append(("em/R(Z/2) special", is_special_discrete(R_diagram(Z2_ring(trivial_group()), N, 0)), {}))
    res.append((f"em/R_G(Z/2) G-special for G={G.name}", is_special_discrete(RG_diagram(Z2_ring(G), N, 0)), {}))
    _, rows = eps_eta_homotopy(R_diagram(Z2_ring(), N, D), N, Q)
    for key in ("eps simplicial", "eta simplicial", "eps.eta = id", "homotopy"):
        res.append((f"em/{key}", all(r[key] for r in rows.values()), {}))
    r = em_ring_pairing(Z2_ring(), N, 1, min(D, 2)).check()
    res.append(("em/ring pairing associative", not r["assoc"],
                {"checked": r["checked"], "exhaustive_cells": len(r["exhaustive"]),
                 "sampled_cells": len(r["sampled"])}))
    res.append(("em/ring pairing unital", not (r["unit_left"] or r["unit_right"]), {}))
    return res


def check_foundations(cfg):
    from .abgroups import Z2_ring
    from .barmachine import Monad, monad_laws, tensor_with_space
    from .fingroups import all_subgroups_product, all_perms, cyclic_group, graph_subgroups
    from .indexdiagrams import (IndexCategory, R_diagram, check_diagram, prolongation_is_equivalence,
                                restrict, triangle_identities, unit_diagram)
    from .simplicial import simplex
    G, N = cfg["G"], cfg["trunc"]
    res = []
    X = R_diagram(Z2_ring(G), N, 0)
    FG = IndexCategory("F_G", N, group=G)
    tri = triangle_identities(X, FG)
    res.append(("foundations/triangle identities", not any(tri.values()), _errs(tri)))
    eq = prolongation_is_equivalence(X, FG)
    res.append(("foundations/unit X -> U P X iso", eq["unit"], {}))
    res.append(("foundations/diagram axioms R(Z/2)", not check_diagram(X), {}))
    I = unit_diagram(N, 0)
    for ground, amb in (("Sigma", "F"), ("N", "F")):
        E = Monad(IndexCategory(ground, N), IndexCategory(amb, N))
        laws = monad_laws(E, restrict(I, E.ground))
        res.append((f"foundations/monad laws {ground}->{amb}", not any(laws.values()), _errs(laws)))
    C2 = cyclic_group(2)
    Ig = unit_diagram(N, 0, group=C2, cat_tag="F_G")
    for ground, variant in (("Sigma_G", "smash"), ("N_G", "smash"), ("N_G", "times")):
        E = Monad(IndexCategory(ground, N, group=C2), IndexCategory("F_G", N, group=C2), variant)
        laws = monad_laws(E, restrict(Ig, E.ground))
        res.append((f"foundations/monad laws {ground} ({variant})", not any(laws.values()), _errs(laws)))
    ident = all_perms(2)[0]
    count = len(graph_subgroups(C2, 2))
    subs = all_subgroups_product(C2, 2)
    brute = sum(1 for S in subs if all(g != 0 or s == ident for g, s in S))
    res.append(("foundations/graph subgroups of C2 x Sigma_2", count == brute == 3,
                {"graph": count, "brute force": brute, "all subgroups": len(subs)}))
    t = tensor_with_space(I, simplex(1, 2), trivial_action(I.cat.group, 0), N, 2, 2)
    res.append(("foundations/tensor with Delta[1]", t["bijective"] and not t["map errors"], {}))
    return res


def check_machine(cfg):
    from .barmachine import machine
    from .homology import reduced_homology, stability_run
    G, Q, D = cfg["G"], cfg["qmax"], cfg["dmax"]
    tag = cfg["tag"]
    over_G = tag != "S^Sigma" and tag != "S^N"
    Ns = cfg["trunc"] if isinstance(cfg["trunc"], list) else [cfg["trunc"]]
    top = min(Q, D)
    if top < 1:
        raise ConfigError("machine run needs min(qmax, dmax) >= 1 for homology")
    res = []
    for s in cfg["spheres"]:
        V = sphere_rep(G, s)

        def compute(N, V=V):
            X = build_diagram(cfg.get("diagram"), G, N, D, over_G)
            M = machine(tag, X, [V], N, Q, D)
            return reduced_homology(M.level(V), top - 1)

        run = stability_run(compute, Ns, top - 1)
        data = {str(N): r.lines() for N, r in run["results"].items()}
        res.append((f"machine/{tag} level S^{s}", True, {"homology": data, "stable": run["all_agree"]}))
        if len(Ns) > 1:
            # agreement at the two largest truncations; earlier pairs are reported only
            last = all(run["comparisons"][-1]["agree"])
            res.append((f"machine/{tag} level S^{s} stable at N={Ns[-2]},{Ns[-1]}", last,
                        {"comparisons": [{"pair": list(c["pair"]), "agree": c["agree"]} for c in run["comparisons"]]}))
    return res


CHECKS = {
    "iso-r": check_iso_r, "comparisons": check_comparisons, "n-failure": check_n_failure,
    "coherence": check_coherence_suite, "bpq": check_bpq, "em": check_em,
    "foundations": check_foundations, "machine": check_machine,
}


def execute(name, overrides):
    """Run one named check; returns report records."""
    cfg = resolve(name, overrides)
    t0 = time.time()
    results = CHECKS[name](cfg)
    dt = round(time.time() - t0, 3)
    return [{"check": n, "suite": name, "statement": ANCHORS[name], "status": "pass" if ok else "fail",
             "data": data, "seconds": dt} for n, ok, data in results]


# ---------------------------------------------------------------------------
# reporting

def human(records):
    lines = []
    for r in records:
        lines.append(f"[{r['status'].upper():4}] {r['check']}")
        for k, v in r["data"].items():
            if v is None or v == {} or v == 0:
                continue
            if isinstance(v, list) and v and isinstance(v[0], str) and k in ("bar", "A^X"):
                v = "; ".join(v)
            if k == "report":
                lines.extend("       " + ln for ln in str(v).splitlines())
            elif k == "homology":
                for N, hl in v.items():
                    lines.append(f"       N={N}: " + "; ".join(hl))
            else:
                lines.append(f"       {k}: {v}")
    n_fail = sum(r["status"] == "fail" for r in records)
    lines.append(f"{len(records)} checks, {len(records) - n_fail} passed, {n_fail} failed")
    return "\n".join(lines)


def run(runs, output=None, stream=None, as_json=False):
    workers = int(os.environ.get("SEGALBENCH_WORKERS", "1") or 1)
    for name, ov in runs:
        resolve(name, ov)  # configuration errors before any work
    if workers > 1 and len(runs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            chunks = list(ex.map(execute, [n for n, _ in runs], [o for _, o in runs]))
    else:
        chunks = [execute(n, o) for n, o in runs]
    records = [r for c in chunks for r in c]
    stream = sys.stdout if stream is None else stream
    if as_json:
        for r in records:
            print(json.dumps(r, sort_keys=True), file=stream)
    else:
        print(human(records), file=stream)
    if output:
        with open(output, "w") as fh:
            for r in records:
                fh.write(json.dumps(r, sort_keys=True) + "\n")
    return 0 if all(r["status"] == "pass" for r in records) else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="segalbench", description="equivariant Segal machine workbench")
    sub = ap.add_subparsers(dest="cmd")

    def flags(p):
        p.add_argument("--trunc", type=int, nargs="+")
        p.add_argument("--qmax", type=int)
        p.add_argument("--dmax", type=int)
        p.add_argument("--group")
        p.add_argument("--config")
        p.add_argument("--output", help="write the line-delimited JSON report here")
        p.add_argument("--json", action="store_true", help="print JSON lines instead of text")

    v = sub.add_parser("verify")
    v.add_argument("what", choices=["iso-r", "comparisons", "coherence", "bpq", "em", "foundations"])
    v.add_argument("--budget", type=int)
    flags(v)
    d = sub.add_parser("demo")
    d.add_argument("what", choices=["n-failure"])
    flags(d)
    m = sub.add_parser("machine")
    m.add_argument("what", choices=["run"])
    m.add_argument("--tag")
    m.add_argument("--spheres", nargs="+")
    m.add_argument("--diagram", help="JSON diagram spec, e.g. '{\"kind\": \"R\", \"orders\": [2]}'")
    flags(m)
    c = sub.add_parser("describe")
    c.add_argument("what", choices=["cats"])
    c.add_argument("--tags", nargs="+", default=["F_G", "Sigma_G", "N_G"])
    flags(c)
    r = sub.add_parser("run")
    r.add_argument("--suite", help="comma separated checks (overrides the config's suite)")
    flags(r)
    return ap


def _overrides(args):
    ov = {}
    if args.trunc is not None:
        ov["trunc"] = args.trunc[0] if len(args.trunc) == 1 else args.trunc
    for k in ("qmax", "dmax", "group"):
        if getattr(args, k, None) is not None:
            ov[k] = getattr(args, k)
    for k in ("budget", "tag"):
        if getattr(args, k, None) is not None:
            ov[k] = getattr(args, k)
    if getattr(args, "spheres", None):
        ov["spheres"] = [s if s == "regular" else int(s) for s in args.spheres]
    if getattr(args, "diagram", None):
        try:
            ov["diagram"] = json.loads(args.diagram)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--diagram: {exc.msg}") from None
    return ov


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.cmd is None:
        ap.print_help()
        return 2
    try:
        base = load_config(args.config) if args.config else {}
        output = args.output or base.get("output")
        if args.cmd == "describe":
            from .indexdiagrams import IndexCategory
            cfg = resolve("foundations", {**({"group": base["group"]} if "group" in base else {}),
                                          **_overrides(args)})
            for tag in args.tags:
                print("\n".join(IndexCategory(tag, cfg["trunc"], group=cfg["G"]).describe()))
            return 0
        if args.cmd == "run":
            data = dict(base)
            if args.suite is not None:
                data["suite"] = [s for s in args.suite.split(",") if s]
            runs = config_to_runs(data)
            ov = _overrides(args)
            runs = [(n, {**o, **ov}) for n, o in runs]
        else:
            name = {"verify": args.what, "demo": "n-failure", "machine": "machine"}[args.cmd]
            runs = config_to_runs({**base, "suite": [name]})
            runs = [(n, {**o, **_overrides(args)}) for n, o in runs]
        return run(runs, output, as_json=args.json)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
