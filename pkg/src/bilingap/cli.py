"""Command-line interface.

Subcommands: gen, eval, cut, maxcut, hullcheck, experiment.  Results print
to stdout as JSON; diagnostics go to stderr.  Exit codes: 0 success, 1 bad
input or usage, 2 instance too large for the requested operation, 3 internal
invariant or certificate failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cuts import find_large_cut, max_cut_bruteforce, min_cut_bruteforce
from .envelopes import EvaluationPoint, gap_report
from .errors import CapacityError, InputError, InvariantViolationError
from .experiments import EXPERIMENT_KINDS, ExperimentConfig, run_experiment
from .graph import SignedWeightedGraph, VertexSubset, read_instance, write_instance
from .hullcheck import check_hull_exact
from .instances import INSTANCE_FAMILIES, InstanceSpec

THREADS_ENV_VAR = "BILIN_GAP_THREADS"


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage errors with exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _parse_point(spec: str | None, n: int) -> EvaluationPoint:
    """Comma-separated coordinates in [0,1]; 'h' means 1/2; None means all-half."""
    if spec is None:
        return EvaluationPoint.all_half(n)
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != n:
        raise InputError(f"point has {len(parts)} coordinates, instance has n={n}")
    coords = []
    for p in parts:
        if p in ("h", "H"):
            coords.append(0.5)
            continue
        try:
            coords.append(float(p))
        except ValueError:
            raise InputError(f"bad coordinate {p!r}; expected a number in [0,1] or 'h'")
    return EvaluationPoint.from_iterable(coords)


def _parse_subset(spec: str | None, n: int) -> VertexSubset:
    """Comma-separated 1-based vertex labels; None or '' means all vertices."""
    if spec is None or spec.strip() == "":
        return VertexSubset.full(n)
    members = []
    for p in spec.split(","):
        p = p.strip()
        try:
            v = int(p)
        except ValueError:
            raise InputError(f"bad vertex label {p!r}")
        if not 1 <= v <= n:
            raise InputError(f"vertex {v} outside 1..{n}")
        members.append(v)
    return VertexSubset.from_members(members)


def _parse_signs(spec: str) -> tuple[float, ...]:
    out = []
    for p in spec.split(","):
        p = p.strip()
        if p in ("+", "+1", "1"):
            out.append(1.0)
        elif p in ("-", "-1"):
            out.append(-1.0)
        else:
            raise InputError(f"bad sign {p!r}; expected '+' or '-'")
    return tuple(out)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _cmd_gen(args) -> int:
    spec = InstanceSpec(
        family=args.family,
        n=args.n,
        seed=args.seed,
        signs=_parse_signs(args.signs) if args.signs is not None else None,
        path=None,
    )
    g = spec.build()
    write_instance(g, args.out, fmt=args.format)
    sys.stderr.write(f"wrote {args.out} (n={g.n}, {len(g.edges)} edges)\n")
    return 0


def _cmd_eval(args) -> int:
    g = read_instance(args.instance)
    x = _parse_point(args.point, g.n)
    report = gap_report(g, x)
    _emit(report.to_json_dict())
    return 0


def _cmd_cut(args) -> int:
    g = read_instance(args.instance)
    res = find_large_cut(g, rng_seed=args.seed, trial_budget=args.budget)
    _emit(res.to_json_dict())
    return 0


def _cmd_maxcut(args) -> int:
    g = read_instance(args.instance)
    x = _parse_subset(args.subset, g.n)
    mu_plus, cut_plus = max_cut_bruteforce(g, x)
    mu_minus, cut_minus = min_cut_bruteforce(g, x)
    _emit(
        {
            "subset": list(x.members),
            "mu_plus": mu_plus,
            "witness_plus": list(cut_plus.side.members),
            "mu_minus": mu_minus,
            "witness_minus": list(cut_minus.side.members),
        }
    )
    return 0


def _cmd_hullcheck(args) -> int:
    g = read_instance(args.instance)
    result = check_hull_exact(g)
    _emit(result.to_json_dict())
    return 0


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")
    if value < 1:
        raise InputError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
    return value


def _cmd_experiment(args) -> int:
    base: dict = {}
    if args.config is not None:
        with open(args.config) as fh:
            base = json.load(fh)
        if not isinstance(base, dict):
            raise InputError(f"config file {args.config} must hold a JSON object")
    if args.kind is not None:
        base["kind"] = args.kind
    if args.n is not None:
        base["n_min"] = args.n
        base["n_max"] = args.n
    if args.n_min is not None:
        base["n_min"] = args.n_min
    if args.n_max is not None:
        base["n_max"] = args.n_max
    if args.num_instances is not None:
        base["num_instances"] = args.num_instances
    if args.seed_base is not None:
        base["seed_base"] = args.seed_base
    if args.budget is not None:
        base["trial_budget"] = args.budget
    if args.out is not None:
        base["output_path"] = args.out
    if args.format is not None:
        base["output_format"] = args.format
    base["threads"] = args.threads if args.threads is not None else _default_threads()
    if "kind" not in base:
        raise InputError("experiment kind required (positional argument or config file)")
    for key in ("n_min", "n_max"):
        if key not in base:
            raise InputError(f"experiment needs {key} (--n or --n-min/--n-max or config)")
    allowed = {f for f in ExperimentConfig.__dataclass_fields__}
    unknown = set(base) - allowed
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    cfg = ExperimentConfig(**base)
    _, summary = run_experiment(cfg)
    _emit(summary)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="bilingap", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("gen", help="generate an instance file from a named family")
    p.add_argument("--family", required=True, choices=[f for f in INSTANCE_FAMILIES if f != "custom_file"])
    p.add_argument("--n", type=int, required=True, help="vertex count (per side for bipartite)")
    p.add_argument("--seed", type=int, default=None, help="seed for random families")
    p.add_argument("--signs", default=None, help="comma-separated +/- list for cycle/path")
    p.add_argument("--out", required=True, help="output file (.json or .txt)")
    p.add_argument("--format", choices=("json", "text"), default=None, help="override extension sniffing")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("eval", help="envelope values and gap ratio at a point")
    p.add_argument("--instance", required=True)
    p.add_argument("--point", default=None, help="comma-separated coords, 'h' = 1/2 (default all-half)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("cut", help="find a cut meeting the total/(600 sqrt(n)) guarantee")
    p.add_argument("--instance", required=True)
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--budget", type=int, default=1000, help="sampling trial budget")
    p.set_defaults(func=_cmd_cut)

    p = sub.add_parser("maxcut", help="exact extreme cut weights within a subset (n <= 26)")
    p.add_argument("--instance", required=True)
    p.add_argument("--subset", default=None, help="comma-separated vertices (default all)")
    p.set_defaults(func=_cmd_maxcut)

    p = sub.add_parser("hullcheck", help="decide hull exactness by cycle sign parity")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=_cmd_hullcheck)

    p = sub.add_parser("experiment", help="run a batch experiment and print its summary")
    p.add_argument("kind", nargs="?", choices=EXPERIMENT_KINDS, help="experiment kind")
    p.add_argument("--config", default=None, help="JSON config file; flags override it")
    p.add_argument("--n", type=int, default=None, help="shorthand for --n-min N --n-max N")
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--num-instances", type=int, default=None)
    p.add_argument("--seed-base", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="cut-finder trial budget")
    p.add_argument("--out", default=None, help="record output file")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--threads", type=int, default=None, help=f"worker threads (default ${THREADS_ENV_VAR} or 1)")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 0
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except InvariantViolationError as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return 3
    except CapacityError as exc:
        sys.stderr.write(f"capacity: {exc}\n")
        return 2
    except (InputError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
