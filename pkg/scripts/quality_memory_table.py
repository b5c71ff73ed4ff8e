#!/usr/bin/env python3
"""Desk-scale quality/memory comparison table.

For a few synthetic Pauli instances, runs the palette engine in its normal
(12.5%, alpha=2) and aggressive (3%, alpha=30) configurations against the
four greedy orderings, and prints colors plus the edge-storage proxy
(palette engine: 2 * peak |Ec|; greedy: materialized CSR entries).

Usage: python scripts/quality_memory_table.py [--n 2000] [--num-qubits 4]
       [--instances 3] [--seeds 3] [--csv out.csv]
"""

import argparse
import csv
import sys

import numpy as np

import palettecolor as pc


def run_instance(n, num_qubits, inst_seed, run_seeds):
    ps = pc.PauliSet.from_strings(pc.random_pauli_strings(n, num_qubits, seed=inst_seed))
    view = pc.pauli_view(ps)
    rows = []
    for label, pct, alpha in (("normal", 12.5, 2.0), ("aggressive", 3.0, 30.0)):
        colors, entries = [], []
        for s in run_seeds:
            res = pc.run(view, pc.PaletteParams(pct, alpha, seed=s))
            colors.append(res.total_colors)
            entries.append(2 * res.peak_conflict_edges)
        rows.append({
            "instance": f"pauli-n{n}-q{num_qubits}-s{inst_seed}",
            "method": f"palette-{label}",
            "colors": float(np.mean(colors)),
            "edge_entries": float(np.mean(entries)),
        })
    for ordering in ("LF", "SL", "DLF", "ID"):
        res = pc.greedy_color(view, ordering)
        rows.append({
            "instance": f"pauli-n{n}-q{num_qubits}-s{inst_seed}",
            "method": f"greedy-{ordering}",
            "colors": float(res.colors_used),
            "edge_entries": float(res.adjacency_entries),
        })
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--num-qubits", type=int, default=4)
    ap.add_argument("--instances", type=int, default=3)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args(argv)

    all_rows = []
    for k in range(args.instances):
        all_rows += run_instance(args.n, args.num_qubits, 600 + k, range(1, args.seeds + 1))

    print(f"{'instance':<26} {'method':<20} {'colors':>9} {'edge entries':>14}")
    for row in all_rows:
        print(f"{row['instance']:<26} {row['method']:<20} {row['colors']:>9.1f} {row['edge_entries']:>14.0f}")

    if args.csv:
        with open(args.csv, "w", newline="") as f:
            w = csv.DictWriter(f, fieldnames=["instance", "method", "colors", "edge_entries"])
            w.writeheader()
            w.writerows(all_rows)
        print(f"\nwrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
