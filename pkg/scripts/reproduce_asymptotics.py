#!/usr/bin/env python3
"""Sweep the McCormick/hull gap ratio of random sign complete graphs over n.

Writes one CSV row per (n, seed) and prints a per-n table of the ratio
against the sqrt(n)/4 reference line.  Exact cut enumeration throughout, so
n is capped at 24.
"""
from __future__ import annotations

import argparse

from bilingap.experiments import ExperimentConfig, run_ratio_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--num-instances", type=int, default=50)
    ap.add_argument("--seed-base", type=int, default=0)
    ap.add_argument("--out", default="ratio_sweep.csv")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    cfg = ExperimentConfig(
        kind="ratio_sweep",
        n_min=args.n_min,
        n_max=args.n_max,
        num_instances=args.num_instances,
        seed_base=args.seed_base,
        output_path=args.out,
        threads=args.threads,
    )
    _, summary = run_ratio_sweep(cfg)
    print(f"{'n':>4} {'mean ratio':>12} {'min ratio':>12} {'frac >= sqrt(n)/4':>18}")
    for row in summary["per_n"]:
        print(
            f"{row['n']:>4} {row['mean_ratio']:>12.4f} {row['min_ratio']:>12.4f} "
            f"{row['fraction_met']:>18.2%}"
        )
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
