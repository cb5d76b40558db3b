"""Coherence of phi at larger budgets, and the ring pairing for S(R Z/2) on
three circles.  Reports exhaustive and sampled cells separately.

    python scripts/coherence_sweep.py --budget 20000 --ring-ks 1 1 1
"""
import argparse
import time

from segalbench.abgroups import Z2_ring
from segalbench.fingroups import trivial_action, trivial_group
from segalbench.monoidal import check_coherence, em_ring_pairing
from segalbench.simplicial import sphere


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trunc", type=int, default=3)
    ap.add_argument("--qmax", type=int, default=2)
    ap.add_argument("--dmax", type=int, default=3)
    ap.add_argument("--budget", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ring-ks", type=int, nargs=3, default=[1, 1, 1])
    ap.add_argument("--skip-phi", action="store_true")
    args = ap.parse_args()
    e = trivial_group()
    if not args.skip_phi:
        As = []
        for k in (0, 1):
            S = sphere(trivial_action(e, k), args.dmax)
            S.name = f"S{k}"
            As.append(S)
        t0 = time.time()
        rep = check_coherence(As, args.trunc, args.qmax, args.dmax, budget=args.budget, seed=args.seed)
        print(f"phi coherence, N={args.trunc} Q={args.qmax} D={args.dmax} budget={args.budget} "
              f"({time.time() - t0:.0f}s)")
        for name, r in rep.items():
            print(f"  {name:<11} checked {r['checked']:>8}  exhaustive cells {len(r['exhaustive']):>3}  "
                  f"sampled cells {len(r['sampled']):>3}  failures {len(r['failures'])}")
    t0 = time.time()
    r = em_ring_pairing(Z2_ring(), 2, 1, 2).check(ks=tuple(args.ring_ks), qmax=1, dmax=2, seed=args.seed)
    print(f"ring pairing S^{args.ring_ks} ({time.time() - t0:.0f}s): checked {r['checked']}, "
          f"exhaustive {r['exhaustive']}, sampled {r['sampled']}, "
          f"failures assoc {len(r['assoc'])} unit {len(r['unit_left']) + len(r['unit_right'])}")


if __name__ == "__main__":
    main()
