#!/usr/bin/env python3
"""How the peak conflict-edge ratio scales with instance size.

The first-iteration conflict density is the probability that two uniform
L-subsets of a palette of size P intersect: 1 - C(P-L, L)/C(P, L).  With
P = pct% of n and L = round(alpha * ln n) this decays like (ln n)^2 / n,
so the engine's memory advantage over full-graph methods only opens up as
n grows.  This script measures peak |Ec| / |E| on random Pauli instances
and prints it next to the closed form, optionally extrapolating the
closed form to sizes too big to run here.

Usage: python scripts/conflict_density_scaling.py [--sizes 500,1000,2000,4000]
       [--palette-pct 12.5] [--alpha 2.0] [--seeds 3]
       [--extrapolate 20000,150000,2000000]
"""

import argparse
import math
import sys

import numpy as np

import palettecolor as pc


def closed_form(n, pct, alpha):
    p = max(1, math.ceil(pct / 100.0 * n))
    l = min(p, max(1, round(alpha * math.log(n))))
    no_overlap = 1.0
    for t in range(l):
        no_overlap *= (p - l - t) / (p - t)
    return 1.0 - no_overlap, p, l


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="500,1000,2000,4000")
    ap.add_argument("--palette-pct", type=float, default=12.5)
    ap.add_argument("--alpha", type=float, default=2.0)
    ap.add_argument("--num-qubits", type=int, default=11)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--extrapolate", default="20000,150000,2000000")
    args = ap.parse_args(argv)

    print(f"{'n':>9} {'P':>7} {'L':>4} {'measured |Ec|/m':>16} {'closed form':>12}")
    for n in (int(x) for x in args.sizes.split(",")):
        ps = pc.PauliSet.from_strings(pc.random_pauli_strings(n, args.num_qubits, seed=n))
        view = pc.pauli_view(ps)
        ratios = []
        for s in range(1, args.seeds + 1):
            res = pc.run(view, pc.PaletteParams(args.palette_pct, args.alpha, seed=s))
            ratios.append(res.peak_conflict_edges / res.oracle_edges)
        cf, p, l = closed_form(n, args.palette_pct, args.alpha)
        print(f"{n:>9} {p:>7} {l:>4} {np.mean(ratios):>16.4f} {cf:>12.4f}")

    if args.extrapolate:
        print("\nclosed form extrapolated:")
        for n in (int(x) for x in args.extrapolate.split(",")):
            cf, p, l = closed_form(n, args.palette_pct, args.alpha)
            print(f"{n:>9} {p:>7} {l:>4} {'-':>16} {cf:>12.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
