#!/usr/bin/env python3
"""Stress the randomized cut finder against its total/(600 sqrt(n)) guarantee.

Alternates +-1 and uniform real weight complete graphs over a size range and
reports how often the guarantee held, how far above the bound the found cuts
landed, and which constructive case fired.
"""
from __future__ import annotations

import argparse

from bilingap.experiments import ExperimentConfig, run_cutfinder_stress


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=50)
    ap.add_argument("--num-instances", type=int, default=500)
    ap.add_argument("--seed-base", type=int, default=0)
    ap.add_argument("--budget", type=int, default=1000)
    ap.add_argument("--out", default="cut_stress.csv")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    cfg = ExperimentConfig(
        kind="cutfinder_stress",
        n_min=args.n_min,
        n_max=args.n_max,
        num_instances=args.num_instances,
        seed_base=args.seed_base,
        trial_budget=args.budget,
        output_path=args.out,
        threads=args.threads,
    )
    _, summary = run_cutfinder_stress(cfg)
    print(f"instances            {summary['num_instances']}")
    print(f"guarantee met        {summary['fraction_meets_guarantee']:.2%}")
    print(f"min |weight|/bound   {summary['min_bound_ratio']:.2f}")
    print(f"max trials used      {summary['max_trials_used']}")
    for case, count in summary["case_counts"].items():
        print(f"  {case:<16} {count}")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
