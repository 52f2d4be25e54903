#!/usr/bin/env python3
"""Census of the hull exactness decision against exhaustive numerics.

Covers every sign pattern of small cycles and paths plus seeded random
graphs; each instance is decided twice (cycle parity vs the subset cut
identity) and any disagreement is reported as a failure.
"""
from __future__ import annotations

import argparse

from bilingap.experiments import ExperimentConfig, run_hull_census


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--num-instances", type=int, default=200)
    ap.add_argument("--seed-base", type=int, default=0)
    ap.add_argument("--out", default="hull_census.csv")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    cfg = ExperimentConfig(
        kind="hull_census",
        n_min=args.n_min,
        n_max=args.n_max,
        num_instances=args.num_instances,
        seed_base=args.seed_base,
        output_path=args.out,
        threads=args.threads,
    )
    _, summary = run_hull_census(cfg)
    print(f"instances      {summary['total']}")
    print(f"exact          {summary['num_exact']}")
    print(f"agreement      {summary['fraction_agree']:.2%}")
    if summary["disagreements"]:
        print(f"DISAGREEMENTS: {summary['disagreements']}")
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
