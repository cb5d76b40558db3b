"""Tables of simplex counts for the bar objects over Sigma_G, N_G and the
reduced product variant, at each target object and bar degree.

    python scripts/bar_sizes.py --group C2 --trunc 2 --qmax 2
"""
import argparse

from segalbench.abgroups import cyclic_ring
from segalbench.barmachine import ObjectBar
from segalbench.fingroups import parse_group_name
from segalbench.indexdiagrams import IndexCategory, RG_diagram


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--group", default="C2")
    ap.add_argument("--trunc", type=int, default=2)
    ap.add_argument("--qmax", type=int, default=2)
    ap.add_argument("--order", type=int, default=2)
    args = ap.parse_args()
    G = parse_group_name(args.group)
    Y = RG_diagram(cyclic_ring(args.order, G), args.trunc, 0)
    cat = Y.cat
    bars = [
        ("Sigma_G", ObjectBar(IndexCategory("Sigma_G", args.trunc, group=G, actions=cat.actions), Y, args.qmax)),
        ("N_G", ObjectBar(IndexCategory("N_G", args.trunc, group=G, actions=cat.actions), Y, args.qmax)),
        ("N_G reduced x", ObjectBar(IndexCategory("N_G", args.trunc, group=G, actions=cat.actions), Y, args.qmax,
                                    variant="times")),
    ]
    head = f"{'bar':<16}{'target':<10}" + "".join(f"{'q=' + str(q):>10}" for q in range(args.qmax + 1))
    print(f"R_G(Z/{args.order}) over F_G, G = {G.name}, N = {args.trunc}, internal degree 0")
    print(head)
    for name, B in bars:
        for d in B.targets:
            if cat.card(d) == 0:
                continue
            sizes = [len(B.level(d, q, 0)) for q in range(args.qmax + 1)]
            print(f"{name:<16}{str(d):<10}" + "".join(f"{n:>10}" for n in sizes))


if __name__ == "__main__":
    main()
