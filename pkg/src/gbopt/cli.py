"""Command-line front end: single runs, comparison batches, the stability
protocol, and the function registry.

Every subcommand is a thin adapter over the library; running the same
parameters through the Python API gives identical results.  Exit codes:
0 success, 1 usage or runtime error, 2 evaluation budget exhausted,
3 partial failures in a batch.  GBO_SEED in the environment supplies the
default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .benchmarks import FUNCTION_IDS, function_table, make_function
from .harness import (
    ALGORITHMS,
    STABILITY_FUNCTIONS,
    ExperimentSpec,
    emit,
    gbo_config_from_dict,
    run_experiment,
    stability_report,
)
from .optimizer import gbo_optimize

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2
EXIT_PARTIAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this CLI reserves 2 for budget
    exhaustion, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _default_seed() -> int:
    try:
        return int(os.environ.get("GBO_SEED", "0"))
    except ValueError:
        return 0


def _csv_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def build_parser() -> _Parser:
    parser = _Parser(
        prog="gbopt",
        description="Granular-ball optimization over boxed benchmark functions.",
    )
    parser.add_argument(
        "--version", action="version", version=f"gbopt {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="one granular-ball optimizer run")
    run.add_argument("--function", required=True, help="benchmark id, f1..f20")
    run.add_argument("--dim", type=int, default=None, help="dimension override (default: function's own)")
    run.add_argument("--mode", choices=["basic", "prime"], default="basic",
                     help="ball evaluator/splitter (default: basic)")
    run.add_argument("--oob", choices=["clamp", "raw"], default="clamp",
                     help="out-of-bounds probe policy (default: clamp)")
    run.add_argument("--seed", type=int, default=_default_seed(),
                     help="noise seed for stochastic objectives (default: $GBO_SEED or 0)")
    run.add_argument("--max-evaluations", type=int, default=10_000_000,
                     help="safety budget (default: 10000000)")
    run.add_argument("--max-rounds", type=int, default=64,
                     help="safety budget (default: 64)")
    run.add_argument("--out", default=None, help="write the run record as JSON")

    compare = sub.add_parser("compare", help="functions x algorithms x repeats batch")
    compare.add_argument("--functions", default=None,
                         help="comma-separated ids (default: all 20)")
    compare.add_argument("--algorithms", default=None,
                         help=f"comma-separated names from {{{','.join(ALGORITHMS)}}} (default: gbo)")
    compare.add_argument("--repeats", type=int, default=None, help="runs per cell (default: 10)")
    compare.add_argument("--seed", type=int, default=None,
                         help="seed base; repeat i uses seed+i (default: $GBO_SEED or 0)")
    compare.add_argument("--mode", choices=["basic", "prime"], default=None,
                         help="gbo ball evaluator/splitter (default: basic)")
    compare.add_argument("--oob", choices=["clamp", "raw"], default=None,
                         help="gbo out-of-bounds policy (default: clamp)")
    compare.add_argument("--spec", default=None,
                         help="JSON experiment spec file; explicit flags override its fields")
    compare.add_argument("--format", choices=["csv", "markdown", "json"], default="csv",
                         help="output format (default: csv)")
    compare.add_argument("--out", default=None, help="output file (default: stdout)")
    compare.add_argument("--timing", action="store_true",
                         help="force sequential execution for clean wall times "
                              "(runs are sequential either way; recorded in the spec)")

    stability = sub.add_parser(
        "stability", help=f"stability protocol over {', '.join(STABILITY_FUNCTIONS)}"
    )
    stability.add_argument("--repeats", type=int, default=10, help="runs per cell (default: 10)")
    stability.add_argument("--algorithms", default=",".join(ALGORITHMS),
                           help="comma-separated names (default: all)")
    stability.add_argument("--seed", type=int, default=_default_seed(),
                           help="seed base (default: $GBO_SEED or 0)")
    stability.add_argument("--mode", choices=["basic", "prime"], default="basic",
                           help="gbo ball evaluator/splitter (default: basic)")
    stability.add_argument("--oob", choices=["clamp", "raw"], default="clamp",
                           help="gbo out-of-bounds policy (default: clamp)")
    stability.add_argument("--out", default=None, help="output file (default: stdout)")

    sub.add_parser("list-functions", help="dump the benchmark registry")
    return parser


def _cmd_run(args) -> int:
    try:
        objective = make_function(args.function, args.dim)
    except KeyError:
        print(
            f"unknown function {args.function!r}; valid ids: {', '.join(FUNCTION_IDS)}",
            file=sys.stderr,
        )
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    config = gbo_config_from_dict(
        {
            "mode": args.mode,
            "oob_policy": args.oob,
            "max_evaluations": args.max_evaluations,
            "max_rounds": args.max_rounds,
        },
        args.seed,
    )
    record = gbo_optimize(objective, config)
    error = abs(record.best_value - objective.optimum_value)
    print(f"function      {objective.id} ({objective.name}), d={objective.dimension}")
    print(f"best value    {record.best_value!r}")
    print(f"best point    {np.asarray(record.best_point).tolist()}")
    print(f"error         {error!r}")
    print(f"evaluations   {record.evaluations}")
    print(f"rounds        {record.rounds}")
    print(f"wall time     {record.wall_time:.4f} s")
    print(f"status        {record.status}")
    if args.out:
        payload = record.to_dict()
        payload["function"] = objective.id
        payload["dimension"] = objective.dimension
        payload["error"] = error
        payload["mode"] = args.mode
        payload["oob"] = args.oob
        payload["seed"] = args.seed
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    return EXIT_BUDGET if record.status == "budget" else EXIT_OK


def _write_or_print(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        print(text)


def _cmd_compare(args) -> int:
    try:
        if args.spec:
            spec = ExperimentSpec.from_json(args.spec)
        else:
            spec = ExperimentSpec(functions=list(FUNCTION_IDS))
        if args.functions is not None:
            spec.functions = _csv_list(args.functions)
        if args.algorithms is not None:
            spec.algorithms = _csv_list(args.algorithms)
        if args.repeats is not None:
            spec.repeats = args.repeats
        if args.seed is not None:
            spec.seed_base = args.seed
        elif not args.spec:
            spec.seed_base = _default_seed()
        spec.timing = args.timing or spec.timing
        gbo_cfg = dict(spec.configs.get("gbo", {}))
        if args.mode is not None:
            gbo_cfg["mode"] = args.mode
        if args.oob is not None:
            gbo_cfg["oob_policy"] = args.oob
        spec.configs["gbo"] = gbo_cfg
        if args.out:
            spec.out = args.out
        spec.__post_init__()
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    table = run_experiment(spec)
    _write_or_print(emit(table, args.format), args.out)
    failed = [r for r in table.rows if r.status.startswith("failed")]
    return EXIT_PARTIAL if failed else EXIT_OK


def _cmd_stability(args) -> int:
    try:
        spec = ExperimentSpec(
            functions=list(STABILITY_FUNCTIONS),
            algorithms=_csv_list(args.algorithms),
            repeats=args.repeats,
            seed_base=args.seed,
            configs={"gbo": {"mode": args.mode, "oob_policy": args.oob}},
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    table = run_experiment(spec)
    try:
        report = stability_report(table)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    payload = {
        "protocol": {
            "functions": list(STABILITY_FUNCTIONS),
            "algorithms": spec.algorithms,
            "repeats": spec.repeats,
            "seed_base": spec.seed_base,
        },
        "series": report,
    }
    _write_or_print(json.dumps(payload, indent=2), args.out)
    failed = [r for r in table.rows if r.status.startswith("failed")]
    return EXIT_PARTIAL if failed else EXIT_OK


def _cmd_list_functions() -> int:
    rows = function_table()
    widths = {
        "id": 4,
        "name": max(len(r["name"]) for r in rows) + 1,
        "dimension": 4,
        "domain": max(len(r["domain"]) for r in rows) + 1,
    }
    print(
        f"{'id':<{widths['id']}} {'name':<{widths['name']}} "
        f"{'d':<{widths['dimension']}} {'domain':<{widths['domain']}} "
        f"{'opt':>6}  noisy"
    )
    for r in rows:
        noisy = "" if r["deterministic"] else "yes"
        print(
            f"{r['id']:<{widths['id']}} {r['name']:<{widths['name']}} "
            f"{r['dimension']:<{widths['dimension']}} {r['domain']:<{widths['domain']}} "
            f"{r['optimum']:>6g}  {noisy}"
        )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "compare":
            return _cmd_compare(args)
        if args.command == "stability":
            return _cmd_stability(args)
        if args.command == "list-functions":
            return _cmd_list_functions()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
