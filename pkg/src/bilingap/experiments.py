"""Batch experiment drivers with deterministic, streamable CSV/JSON output.

Five kinds are supported:

* thm1_montecarlo  - gap ratio of random +/-1 complete graphs at the all-half
                     point against the sqrt(n)/4 threshold,
* ratio_sweep      - the same measurement swept over a range of n,
* hadamard_ratio   - exact gap ratio and discrepancy bound of the
                     bit-inner-product instances over a range of n,
* cutfinder_stress - find_large_cut guarantee over many seeded instances,
* hull_census      - combinatorial vs numerical hull-exactness decisions over
                     sign-pattern families and random graphs.

Every run with an identical config produces byte-identical output except for
the wall_time_ms column, which reports real elapsed time and is excluded from
determinism comparisons.  Records are streamed append-only in their final
order, so an interrupted output file is a valid prefix of the full one.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .cuts import cut_range_bruteforce, find_large_cut
from .envelopes import EvaluationPoint, mcgap_halfpoint
from .errors import CapacityError, InputError
from .graph import SignedWeightedGraph
from .cuts import all_subset_cut_extremes, all_subset_gamma
from .hullcheck import check_hull_exact
from .instances import (
    hadamard_discrepancy_bound,
    hadamard_instance,
    random_pm1_complete,
    signed_cycle,
    signed_path,
)
from .rng import SplitMix64

EXPERIMENT_KINDS = (
    "thm1_montecarlo",
    "hadamard_ratio",
    "cutfinder_stress",
    "hull_census",
    "ratio_sweep",
)

_KIND_N_CAPS = {
    "thm1_montecarlo": 24,
    "hadamard_ratio": 24,
    "ratio_sweep": 24,
    "cutfinder_stress": 50,
    "hull_census": 10,
}

GAP_CSV_FIELDS = (
    "instance_seed",
    "n",
    "mcgap",
    "chgap",
    "ratio",
    "threshold",
    "threshold_met",
    "wall_time_ms",
)
CUT_CSV_FIELDS = (
    "instance_seed",
    "n",
    "family",
    "weight",
    "bound",
    "bound_ratio",
    "meets_guarantee",
    "case",
    "trials_used",
    "wall_time_ms",
)
CENSUS_CSV_FIELDS = (
    "instance_id",
    "n",
    "exact",
    "numeric_exact",
    "agree",
    "wall_time_ms",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative experiment description; all randomness derives from seed_base."""

    kind: str
    n_min: int
    n_max: int
    num_instances: int = 100
    seed_base: int = 0
    trial_budget: int = 1000
    output_path: str | None = None
    output_format: str = "csv"  # "csv" or "json" (JSON lines)
    threads: int = 1

    def __post_init__(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise InputError(f"unknown experiment kind {self.kind!r}")
        if not 1 <= self.n_min <= self.n_max:
            raise InputError(f"need 1 <= n_min <= n_max, got {self.n_min}..{self.n_max}")
        cap = _KIND_N_CAPS[self.kind]
        if self.n_max > cap:
            raise CapacityError(f"kind {self.kind!r} supports n <= {cap}, got {self.n_max}")
        if self.num_instances < 1:
            raise InputError(f"num_instances must be >= 1, got {self.num_instances}")
        if self.output_format not in ("csv", "json"):
            raise InputError(f"output format must be 'csv' or 'json', got {self.output_format!r}")
        if self.threads < 1:
            raise InputError(f"threads must be >= 1, got {self.threads}")
        if self.trial_budget < 1:
            raise InputError(f"trial_budget must be >= 1, got {self.trial_budget}")

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "num_instances": self.num_instances,
            "seed_base": self.seed_base,
            "trial_budget": self.trial_budget,
            "output_format": self.output_format,
            "threads": self.threads,
        }


@dataclass(frozen=True)
class GapRecord:
    """One gap-ratio measurement; rows of the fixed gap CSV schema."""

    instance_seed: int
    n: int
    mcgap: float
    chgap: float
    ratio: float
    threshold: float
    threshold_met: bool
    wall_time_ms: float

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in GAP_CSV_FIELDS}


@dataclass(frozen=True)
class CutStressRecord:
    instance_seed: int
    n: int
    family: str
    weight: float
    bound: float
    bound_ratio: float
    meets_guarantee: bool
    case: str
    trials_used: int
    wall_time_ms: float

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in CUT_CSV_FIELDS}


@dataclass(frozen=True)
class HullCensusRecord:
    instance_id: str
    n: int
    exact: bool
    numeric_exact: bool
    agree: bool
    wall_time_ms: float

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in CENSUS_CSV_FIELDS}


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class RecordWriter:
    """Streams records to a CSV or JSON-lines file as they are produced.

    CSV files hold the header then one row per record.  JSON files hold one
    object per line: a config line, the records, then a summary line.  Both
    stay valid prefixes of the final output if truncated mid-run.
    """

    def __init__(
        self,
        path: str | Path | None,
        fmt: str,
        fields: Sequence[str],
        config: ExperimentConfig,
    ):
        self.fmt = fmt
        self.fields = tuple(fields)
        self._fh = None
        if path is not None:
            self._fh = open(path, "w")
            if fmt == "csv":
                self._fh.write(",".join(self.fields) + "\n")
            else:
                self._fh.write(json.dumps({"config": config.to_json_dict()}) + "\n")
            self._fh.flush()

    def write(self, record_dict: dict) -> None:
        if self._fh is None:
            return
        if self.fmt == "csv":
            self._fh.write(",".join(_csv_cell(record_dict[f]) for f in self.fields) + "\n")
        else:
            self._fh.write(json.dumps({"record": record_dict}) + "\n")
        self._fh.flush()

    def finish(self, summary: dict) -> None:
        if self._fh is None:
            return
        if self.fmt == "json":
            self._fh.write(json.dumps({"summary": summary}) + "\n")
        self._fh.close()
        self._fh = None


def _ordered_map(worker: Callable, args: Sequence, threads: int) -> Iterable:
    """Map preserving argument order; thread count never changes the output."""
    if threads <= 1:
        for a in args:
            yield worker(a)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, a) for a in args]
        for fut in futures:
            yield fut.result()


def _gap_measurement(g: SignedWeightedGraph, seed: int, threshold: float) -> GapRecord:
    start = time.perf_counter()
    x = EvaluationPoint.all_half(g.n)
    mu_plus, mu_minus = cut_range_bruteforce(g, g.vertices)
    mcgap = mcgap_halfpoint(g, x)
    chgap = 0.5 * (mu_plus - mu_minus)
    ratio = mcgap / chgap if chgap > 0 else (1.0 if mcgap == 0 else math.inf)
    ms = round((time.perf_counter() - start) * 1000.0, 3)
    return GapRecord(
        instance_seed=seed,
        n=g.n,
        mcgap=mcgap,
        chgap=chgap,
        ratio=ratio,
        threshold=threshold,
        threshold_met=ratio >= threshold,
        wall_time_ms=ms,
    )


def run_thm1_montecarlo(cfg: ExperimentConfig) -> tuple[list[GapRecord], dict]:
    """Gap ratio of random +/-1 complete graphs on n = n_max vertices at the all-half point.

    One record per seed seed_base..seed_base+num_instances-1, threshold sqrt(n)/4.
    """
    n = cfg.n_max
    if n < 2:
        raise InputError(f"thm1_montecarlo needs n >= 2, got {n}")
    threshold = math.sqrt(n) / 4.0
    seeds = [cfg.seed_base + t for t in range(cfg.num_instances)]
    writer = RecordWriter(cfg.output_path, cfg.output_format, GAP_CSV_FIELDS, cfg)
    records = []
    for rec in _ordered_map(
        lambda s: _gap_measurement(random_pm1_complete(n, s), s, threshold),
        seeds,
        cfg.threads,
    ):
        records.append(rec)
        writer.write(rec.to_dict())
    ratios = [r.ratio for r in records]
    summary = {
        "kind": cfg.kind,
        "n": n,
        "num_instances": len(records),
        "threshold": threshold,
        "fraction_met": sum(r.threshold_met for r in records) / len(records),
        "min_ratio": min(ratios),
        "max_ratio": max(ratios),
    }
    writer.finish(summary)
    return records, summary


def run_ratio_sweep(cfg: ExperimentConfig) -> tuple[list[GapRecord], dict]:
    """thm1_montecarlo measurement swept over n = n_min..n_max, num_instances seeds each."""
    if cfg.n_min < 2:
        raise InputError(f"ratio_sweep needs n >= 2, got {cfg.n_min}")
    jobs = [
        (n, cfg.seed_base + t)
        for n in range(cfg.n_min, cfg.n_max + 1)
        for t in range(cfg.num_instances)
    ]
    writer = RecordWriter(cfg.output_path, cfg.output_format, GAP_CSV_FIELDS, cfg)
    records = []
    for rec in _ordered_map(
        lambda job: _gap_measurement(
            random_pm1_complete(job[0], job[1]), job[1], math.sqrt(job[0]) / 4.0
        ),
        jobs,
        cfg.threads,
    ):
        records.append(rec)
        writer.write(rec.to_dict())
    per_n = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        group = [r for r in records if r.n == n]
        per_n.append(
            {
                "n": n,
                "mean_ratio": sum(r.ratio for r in group) / len(group),
                "min_ratio": min(r.ratio for r in group),
                "fraction_met": sum(r.threshold_met for r in group) / len(group),
            }
        )
    summary = {"kind": cfg.kind, "num_records": len(records), "per_n": per_n}
    writer.finish(summary)
    return records, summary


def run_hadamard_ratio(
    ns: Sequence[int] | ExperimentConfig,
) -> tuple[list[GapRecord], dict]:
    """Exact gap ratio and discrepancy check of bit-inner-product instances.

    Accepts a config (n_min..n_max) or an explicit list of sizes.  Records
    use n as the instance_seed column since the family is deterministic.
    Thresholds are sqrt(n)/3; the summary also reports whether the exact
    extreme cut weights respect the n^{3/2}/sqrt(2) discrepancy bound.
    """
    if isinstance(ns, ExperimentConfig):
        cfg = ns
        sizes = list(range(max(2, cfg.n_min), cfg.n_max + 1))
    else:
        cfg = ExperimentConfig(
            kind="hadamard_ratio", n_min=min(ns), n_max=max(ns), num_instances=1
        )
        sizes = [int(n) for n in ns]
        if any(n < 2 for n in sizes):
            raise InputError(f"hadamard sizes must be >= 2, got {sizes}")
        if max(sizes) > _KIND_N_CAPS["hadamard_ratio"]:
            raise CapacityError(
                f"hadamard_ratio supports n <= {_KIND_N_CAPS['hadamard_ratio']}"
            )
    writer = RecordWriter(cfg.output_path, cfg.output_format, GAP_CSV_FIELDS, cfg)
    records = []
    rows = []
    for rec, row in _ordered_map(_hadamard_one, sizes, cfg.threads):
        records.append(rec)
        rows.append(row)
        writer.write(rec.to_dict())
    summary = {
        "kind": "hadamard_ratio",
        "sizes": sizes,
        "all_within_discrepancy_bound": all(r["discrepancy_ok"] for r in rows),
        "rows": rows,
    }
    writer.finish(summary)
    return records, summary


def _hadamard_one(n: int) -> tuple[GapRecord, dict]:
    start = time.perf_counter()
    g = hadamard_instance(n)
    x = EvaluationPoint.all_half(n)
    mu_plus, mu_minus = cut_range_bruteforce(g, g.vertices)
    mcgap = mcgap_halfpoint(g, x)
    chgap = 0.5 * (mu_plus - mu_minus)
    ratio = mcgap / chgap if chgap > 0 else math.inf
    threshold = math.sqrt(n) / 3.0
    bound = hadamard_discrepancy_bound(n)
    ms = round((time.perf_counter() - start) * 1000.0, 3)
    rec = GapRecord(
        instance_seed=n,
        n=n,
        mcgap=mcgap,
        chgap=chgap,
        ratio=ratio,
        threshold=threshold,
        threshold_met=ratio >= threshold,
        wall_time_ms=ms,
    )
    row = {
        "n": n,
        "mu_plus": mu_plus,
        "mu_minus": mu_minus,
        "discrepancy_bound": bound,
        "discrepancy_ok": mu_plus <= bound + 1e-9 and -mu_minus <= bound + 1e-9,
        "ratio": ratio,
        "threshold": threshold,
        "threshold_met": ratio >= threshold,
    }
    return rec, row


def uniform_real_complete(n: int, seed: int) -> SignedWeightedGraph:
    """Complete graph with uniform weights in [-1, 1) \\ {0}, for stress runs.

    Not an instance-file family; lives here because only the stress driver
    uses real-valued random weights.  One splitmix64 draw per edge in
    lexicographic order (plus redraws on an exact zero).
    """
    rng = SplitMix64(seed)
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            w = 0.0
            while w == 0.0:
                w = 2.0 * rng.next_unit() - 1.0
            edges.append((i, j, w))
    return SignedWeightedGraph(n, tuple(edges))


def run_cutfinder_stress(cfg: ExperimentConfig) -> tuple[list[CutStressRecord], dict]:
    """Run find_large_cut over seeded instances, alternating +/-1 and real weights.

    Instance t uses seed seed_base + t, size cycling n_min..n_max, family
    pm1/real alternating.  The bound_ratio column reports how far above the
    guaranteed total/(600 sqrt(n)) bound the found cut landed.
    """
    if cfg.n_min < 2:
        raise InputError(f"cutfinder_stress needs n >= 2, got {cfg.n_min}")
    span = cfg.n_max - cfg.n_min + 1
    jobs = []
    for t in range(cfg.num_instances):
        seed = cfg.seed_base + t
        n = cfg.n_min + (t % span)
        family = "pm1" if t % 2 == 0 else "real"
        jobs.append((seed, n, family))
    writer = RecordWriter(cfg.output_path, cfg.output_format, CUT_CSV_FIELDS, cfg)

    def worker(job):
        seed, n, family = job
        start = time.perf_counter()
        g = (
            random_pm1_complete(n, seed)
            if family == "pm1"
            else uniform_real_complete(n, seed)
        )
        res = find_large_cut(g, rng_seed=seed, trial_budget=cfg.trial_budget)
        ms = round((time.perf_counter() - start) * 1000.0, 3)
        ratio = abs(res.cut.weight) / res.bound if res.bound > 0 else math.inf
        return CutStressRecord(
            instance_seed=seed,
            n=n,
            family=family,
            weight=res.cut.weight,
            bound=res.bound,
            bound_ratio=ratio,
            meets_guarantee=res.meets_guarantee,
            case=res.case_taken,
            trials_used=res.trials_used,
            wall_time_ms=ms,
        )

    records = []
    for rec in _ordered_map(worker, jobs, cfg.threads):
        records.append(rec)
        writer.write(rec.to_dict())
    case_counts: dict[str, int] = {}
    for r in records:
        case_counts[r.case] = case_counts.get(r.case, 0) + 1
    summary = {
        "kind": cfg.kind,
        "num_instances": len(records),
        "fraction_meets_guarantee": sum(r.meets_guarantee for r in records) / len(records),
        "min_bound_ratio": min(r.bound_ratio for r in records),
        "case_counts": dict(sorted(case_counts.items())),
        "max_trials_used": max(r.trials_used for r in records),
    }
    writer.finish(summary)
    return records, summary


def random_signed_graph(n: int, seed: int) -> SignedWeightedGraph:
    """Random graph for the census: each pair kept with prob 1/2, sign +/-1.

    One splitmix64 draw per pair in lexicographic order; bit 0 decides
    presence (1 -> present), bit 1 the sign (0 -> +1).
    """
    rng = SplitMix64(seed)
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            u = rng.next_u64()
            if u & 1:
                edges.append((i, j, -1.0 if u & 2 else 1.0))
    return SignedWeightedGraph(n, tuple(edges))


def _numeric_exact(g: SignedWeightedGraph, tolerance: float = 1e-9) -> bool:
    """mu_plus(X) - mu_minus(X) = |gamma|(X) for every subset X (table-based, n <= 16)."""
    mu_plus, mu_minus = all_subset_cut_extremes(g)
    gabs = all_subset_gamma(g, absolute=True)
    return bool(abs((mu_plus - mu_minus) - gabs).max() <= tolerance)


def _census_instances(cfg: ExperimentConfig):
    """Census instance stream: exhaustive small sign-pattern families, then random graphs."""
    hi = min(cfg.n_max, 8)
    for n in range(max(3, cfg.n_min), hi + 1):
        for pat in range(1 << n):
            signs = [1.0 if pat >> k & 1 == 0 else -1.0 for k in range(n)]
            label = "".join("+" if s > 0 else "-" for s in signs)
            yield f"cycle{n}:{label}", signed_cycle(n, signs)
    for n in range(max(2, cfg.n_min), hi + 1):
        for pat in range(1 << (n - 1)):
            signs = [1.0 if pat >> k & 1 == 0 else -1.0 for k in range(n - 1)]
            label = "".join("+" if s > 0 else "-" for s in signs)
            yield f"path{n}:{label}", signed_path(n, signs)
    lo = max(2, cfg.n_min)
    for t in range(cfg.num_instances):
        seed = cfg.seed_base + t
        n = lo + (t % (cfg.n_max - lo + 1))
        yield f"random:n{n}:s{seed}", random_signed_graph(n, seed)


def run_hull_census(cfg: ExperimentConfig) -> tuple[list[HullCensusRecord], dict]:
    """Compare the parity-based exactness decision against exhaustive numerics.

    Covers all sign patterns of small cycles and paths plus seeded random
    graphs; each record states whether the two decisions agree.
    """
    items = list(_census_instances(cfg))
    writer = RecordWriter(cfg.output_path, cfg.output_format, CENSUS_CSV_FIELDS, cfg)

    def worker(item):
        label, g = item
        start = time.perf_counter()
        exact = check_hull_exact(g).exact
        numeric = _numeric_exact(g)
        ms = round((time.perf_counter() - start) * 1000.0, 3)
        return HullCensusRecord(
            instance_id=label,
            n=g.n,
            exact=exact,
            numeric_exact=numeric,
            agree=exact == numeric,
            wall_time_ms=ms,
        )

    records = []
    for rec in _ordered_map(worker, items, cfg.threads):
        records.append(rec)
        writer.write(rec.to_dict())
    disagreements = [r.instance_id for r in records if not r.agree]
    summary = {
        "kind": cfg.kind,
        "total": len(records),
        "num_exact": sum(r.exact for r in records),
        "fraction_agree": sum(r.agree for r in records) / len(records),
        "disagreements": disagreements,
    }
    writer.finish(summary)
    return records, summary


def run_experiment(cfg: ExperimentConfig) -> tuple[list, dict]:
    """Dispatch on cfg.kind; returns (records, summary) and writes cfg.output_path."""
    if cfg.kind == "thm1_montecarlo":
        return run_thm1_montecarlo(cfg)
    if cfg.kind == "ratio_sweep":
        return run_ratio_sweep(cfg)
    if cfg.kind == "hadamard_ratio":
        return run_hadamard_ratio(cfg)
    if cfg.kind == "cutfinder_stress":
        return run_cutfinder_stress(cfg)
    return run_hull_census(cfg)
