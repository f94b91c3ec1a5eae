"""Experiment orchestration: repeated seeded runs, error/time aggregation,
stability series, and table/file output.

One experiment crosses functions x algorithms x repeats; repeat ``i`` uses
seed ``seed_base + i``, so deterministic algorithms produce identical rows
and stochastic ones are exactly reproducible.  Completed rows are appended to
disk as they finish, so a crashed batch loses at most one run.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .baselines import OPTIMIZERS
from .benchmarks import FUNCTION_IDS, make_function
from .core import OutOfBoundsPolicy
from .optimizer import GboConfig, Mode, gbo_optimize

ALGORITHMS = ("gbo",) + tuple(OPTIMIZERS)

STABILITY_FUNCTIONS = ("f3", "f4", "f5", "f11")

# Floor added before taking log10 so exact-zero errors stay plottable.
LOG_FLOOR = 1e-31

CSV_HEADER = "function,algorithm,repeat,best_value,error,wall_time_s,evaluations,rounds,status"


def gbo_config_from_dict(options: dict, seed: int) -> GboConfig:
    """Build a GboConfig from a JSON-friendly dict of overrides."""
    opts = dict(options)
    mode = opts.pop("mode", "basic")
    policy = opts.pop("oob_policy", "clamp")
    return GboConfig(
        mode=Mode(mode) if not isinstance(mode, Mode) else mode,
        oob_policy=OutOfBoundsPolicy(policy)
        if not isinstance(policy, OutOfBoundsPolicy)
        else policy,
        noise_seed=seed,
        **opts,
    )


@dataclass
class ExperimentSpec:
    """What to run: functions x algorithms x repeats, plus per-algorithm
    config overrides and where to persist rows."""

    functions: list[str] = field(default_factory=lambda: list(FUNCTION_IDS))
    algorithms: list[str] = field(default_factory=lambda: ["gbo"])
    repeats: int = 10
    seed_base: int = 0
    configs: dict = field(default_factory=dict)
    out: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        for fid in self.functions:
            if fid not in FUNCTION_IDS:
                raise ValueError(f"unknown function id {fid!r}")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ValueError(
                    f"unknown algorithm {alg!r}; valid: {', '.join(ALGORITHMS)}"
                )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> "ExperimentSpec":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class RunRow:
    function: str
    algorithm: str
    repeat: int
    best_value: float
    error: float
    wall_time_s: float
    evaluations: int
    rounds: int
    status: str  # "ok" | "budget" | "failed"

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("best_value", "error"):
            if isinstance(d[key], float) and math.isnan(d[key]):
                d[key] = None
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "RunRow":
        d = dict(data)
        for key in ("best_value", "error"):
            if d[key] is None:
                d[key] = math.nan
        return cls(**d)


@dataclass
class ResultTable:
    spec: ExperimentSpec
    rows: list[RunRow] = field(default_factory=list)

    def aggregates(self) -> list[dict]:
        """Mean error and mean wall time per (function, algorithm), recomputed
        from the row data; failed rows are excluded."""
        out = []
        for fid in self.spec.functions:
            for alg in self.spec.algorithms:
                group = [
                    r
                    for r in self.rows
                    if r.function == fid and r.algorithm == alg and r.status != "failed"
                ]
                if not group:
                    continue
                out.append(
                    {
                        "function": fid,
                        "algorithm": alg,
                        "runs": len(group),
                        "mean_error": float(np.mean([r.error for r in group])),
                        "mean_time_s": float(np.mean([r.wall_time_s for r in group])),
                    }
                )
        return out

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "rows": [r.to_dict() for r in self.rows]}

    @classmethod
    def from_dict(cls, data: dict) -> "ResultTable":
        return cls(
            spec=ExperimentSpec.from_dict(data["spec"]),
            rows=[RunRow.from_dict(r) for r in data["rows"]],
        )


def run_one(function_id: str, algorithm: str, seed: int, configs: dict | None = None):
    """Execute a single optimizer run and return (record, objective)."""
    objective = make_function(function_id)
    options = dict((configs or {}).get(algorithm, {}))
    if algorithm == "gbo":
        record = gbo_optimize(objective, gbo_config_from_dict(options, seed))
    else:
        config_cls, optimize = OPTIMIZERS[algorithm]
        record = optimize(objective, config_cls(rng_seed=seed, **options))
    return record, objective


def run_experiment(spec: ExperimentSpec) -> ResultTable:
    """Run the full cross of the spec, appending rows incrementally.

    Individual run failures become rows with status "failed" instead of
    aborting the batch.  Runs are sequential, so wall times are clean.
    """
    table = ResultTable(spec=spec)
    sink_path = f"{spec.out}.rows.jsonl" if spec.out else None
    if sink_path:
        open(sink_path, "w").close()
    for fid in spec.functions:
        for alg in spec.algorithms:
            for repeat in range(spec.repeats):
                seed = spec.seed_base + repeat
                try:
                    start = time.perf_counter()
                    record, objective = run_one(fid, alg, seed, spec.configs)
                    wall = time.perf_counter() - start
                    row = RunRow(
                        function=fid,
                        algorithm=alg,
                        repeat=repeat,
                        best_value=float(record.best_value),
                        error=abs(record.best_value - objective.optimum_value),
                        wall_time_s=wall,
                        evaluations=record.evaluations,
                        rounds=record.rounds,
                        status="ok" if record.status == "converged" else record.status,
                    )
                except Exception as exc:  # noqa: BLE001 - failed rows are data
                    row = RunRow(
                        function=fid,
                        algorithm=alg,
                        repeat=repeat,
                        best_value=math.nan,
                        error=math.nan,
                        wall_time_s=0.0,
                        evaluations=0,
                        rounds=0,
                        status=f"failed: {exc}",
                    )
                table.rows.append(row)
                if sink_path:
                    with open(sink_path, "a") as fh:
                        fh.write(json.dumps(row.to_dict()) + "\n")
    return table


def stability_report(table: ResultTable, functions=STABILITY_FUNCTIONS) -> dict:
    """Per-repeat error series and averages for the stability protocol.

    Needs at least 10 repeats of each named function.  The display series is
    log10(error + 1e-31) so exact zeros remain finite on a log scale.
    """
    report = {}
    for fid in functions:
        for alg in table.spec.algorithms:
            rows = sorted(
                (
                    r
                    for r in table.rows
                    if r.function == fid and r.algorithm == alg and r.status != "failed"
                ),
                key=lambda r: r.repeat,
            )
            if len(rows) < 10:
                raise ValueError(
                    f"stability report needs >= 10 repeats of {fid}/{alg}, "
                    f"got {len(rows)}"
                )
            errors = [r.error for r in rows]
            report[f"{fid}/{alg}"] = {
                "function": fid,
                "algorithm": alg,
                "errors": errors,
                "mean_error": float(np.mean(errors)),
                "error_variance": float(np.var(errors)),
                "log10_series": [float(np.log10(e + LOG_FLOOR)) for e in errors],
            }
    return report


def _format_cell(value: float) -> str:
    if isinstance(value, float) and math.isnan(value):
        return "nan"
    return f"{value:.6g}"


def _markdown_matrix(table: ResultTable, metric: str, title: str) -> list[str]:
    aggs = {(a["function"], a["algorithm"]): a[metric] for a in table.aggregates()}
    algs = table.spec.algorithms
    lines = [f"### {title}", ""]
    lines.append("| Function | " + " | ".join(a.upper() for a in algs) + " |")
    lines.append("|---" * (len(algs) + 1) + "|")
    for fid in table.spec.functions:
        values = [aggs.get((fid, alg)) for alg in algs]
        present = [v for v in values if v is not None]
        best = min(present) if present else None
        cells = []
        for v in values:
            if v is None:
                cells.append("-")
            elif best is not None and v == best:
                cells.append(f"**{_format_cell(v)}**")
            else:
                cells.append(_format_cell(v))
        lines.append(f"| {fid} | " + " | ".join(cells) + " |")
    lines.append("")
    return lines


def emit(table: ResultTable, format: str = "csv") -> str:
    """Render a result table as csv, markdown, or a lossless json dump."""
    if not table.rows:
        raise ValueError("cannot emit an empty table")
    if format == "csv":
        lines = [CSV_HEADER]
        for r in table.rows:
            status = r.status.replace(",", ";").replace("\n", " ")
            lines.append(
                f"{r.function},{r.algorithm},{r.repeat},{r.best_value!r},"
                f"{r.error!r},{r.wall_time_s!r},{r.evaluations},{r.rounds},{status}"
            )
        return "\n".join(lines) + "\n"
    if format == "markdown":
        lines = _markdown_matrix(table, "mean_error", "Mean error vs. known optimum")
        lines += _markdown_matrix(table, "mean_time_s", "Mean wall time (s)")
        return "\n".join(lines)
    if format == "json":
        return json.dumps(table.to_dict(), indent=2)
    raise ValueError(f"unknown format {format!r}; use csv, markdown, or json")
