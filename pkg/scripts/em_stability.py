"""Homology of the machine level S^1 of R(Z/2) against the nerve of Z/2.

    python scripts/em_stability.py --trunc 1 2 3 --qmax 2 --dmax 2
"""
import argparse
import json
import time

from segalbench.abgroups import cyclic_ring
from segalbench.barmachine import machine
from segalbench.fingroups import cyclic_group, trivial_action, trivial_group
from segalbench.homology import nerve_of_group, reduced_homology, stability_run
from segalbench.indexdiagrams import R_diagram


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trunc", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--qmax", type=int, default=2)
    ap.add_argument("--dmax", type=int, default=2)
    ap.add_argument("--order", type=int, default=2, help="A = Z/order")
    ap.add_argument("--out")
    args = ap.parse_args()
    top = min(args.qmax, args.dmax) - 1
    A = cyclic_ring(args.order)
    V = trivial_action(trivial_group(), 1)
    oracle = reduced_homology(nerve_of_group(cyclic_group(args.order), top + 1), top)
    print(f"nerve of Z/{args.order}: {oracle}")
    rows = []

    def compute(N):
        t0 = time.time()
        L = machine("S^Sigma", R_diagram(A, N, args.dmax), [V], N, args.qmax, args.dmax).level(V)
        h = reduced_homology(L, top)
        rows.append({"N": N, "sizes": L.sizes(), "homology": h.lines(), "seconds": round(time.time() - t0, 2),
                     "matches_oracle": h == oracle})
        print(f"N={N}: sizes {L.sizes()}  {h}  ({time.time() - t0:.1f}s)")
        return h

    run = stability_run(compute, args.trunc, top)
    for c in run["comparisons"]:
        print(f"N={c['pair'][0]} vs N={c['pair'][1]}: per-degree agreement {c['agree']}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"oracle": oracle.lines(), "runs": rows,
                       "comparisons": [{"pair": list(c["pair"]), "agree": c["agree"]} for c in run["comparisons"]]},
                      fh, indent=1)


if __name__ == "__main__":
    main()
