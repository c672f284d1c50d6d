"""Repeated-run experiments, aggregation and report formatting.

A batch runs one algorithm on one problem ``n_runs`` times with seeds
``base_seed, base_seed + 1, ...``. Every run owns its random stream, so
running them in worker processes gives the same numbers as running them
in order.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .core import RNG_NAME, ConfigurationError, RunResult
from .objectives import (
    STATIC_PENALTY_K,
    ObjectiveSpec,
    PenaltyWeights,
    additive_penalty_wrap,
    lookup,
    static_penalty_wrap,
    violations,
)
from .pso import PsoParams, pso_run
from .ueps import UepsParams, ueps_run
from .validation import check_positive_int, check_seed

__all__ = [
    "Algorithm",
    "Penalty",
    "ExperimentConfig",
    "BatchReport",
    "ComparisonReport",
    "build_objective",
    "run_batch",
    "compare_algorithms",
    "format_report",
    "report_to_dict",
    "report_from_dict",
]


class Algorithm(str, enum.Enum):
    UEPS = "ueps"
    PSO = "pso"


class Penalty(str, enum.Enum):
    NONE = "none"
    ADDITIVE = "additive"
    STATIC = "static"


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    algorithm: Algorithm = Algorithm.UEPS
    params: Union[UepsParams, PsoParams, None] = None
    penalty: Penalty = Penalty.NONE
    weights: tuple = ()
    K: float = STATIC_PENALTY_K
    n_runs: int = 10
    base_seed: int = 0

    def __post_init__(self):
        try:
            algorithm = Algorithm(self.algorithm)
            penalty = Penalty(self.penalty)
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from None
        params = self.params
        if params is None:
            params = UepsParams() if algorithm is Algorithm.UEPS else PsoParams()
        expected = UepsParams if algorithm is Algorithm.UEPS else PsoParams
        if not isinstance(params, expected):
            raise ConfigurationError(f"{algorithm.value} needs {expected.__name__}, got {type(params).__name__}")
        object.__setattr__(self, "algorithm", algorithm)
        object.__setattr__(self, "penalty", penalty)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "n_runs", check_positive_int(self.n_runs, "n_runs"))
        object.__setattr__(self, "base_seed", check_seed(self.base_seed))

    @property
    def seeds(self) -> list:
        return [self.base_seed + i for i in range(self.n_runs)]


@dataclass(frozen=True)
class BatchReport:
    config: ExperimentConfig
    runs: tuple
    best_val: float
    mean_val: float
    median_val: float
    std_val: float
    mean_best_pos: np.ndarray
    median_best_pos: np.ndarray
    best_run: int
    median_run: int
    total_wall_time_s: float
    evaluations_total: int
    parallel: bool = False
    # raw objective and constraint report per run, for penalized problems
    feasibility: tuple = field(default=())

    @property
    def seeds(self) -> list:
        return [r.seed for r in self.runs]


@dataclass(frozen=True)
class ComparisonReport:
    problems: tuple
    ueps: tuple
    pso: tuple

    @property
    def batches(self) -> list:
        return [b for pair in zip(self.ueps, self.pso) for b in pair]

    @property
    def ueps_wall_time_s(self) -> float:
        return sum(b.total_wall_time_s for b in self.ueps)

    @property
    def pso_wall_time_s(self) -> float:
        return sum(b.total_wall_time_s for b in self.pso)

    @property
    def total_wall_time_s(self) -> float:
        return self.ueps_wall_time_s + self.pso_wall_time_s


def build_objective(config: ExperimentConfig) -> ObjectiveSpec:
    """Look up the problem and apply the configured penalty, checking they agree."""
    spec = lookup(config.problem)
    if config.penalty is Penalty.NONE:
        if spec.constrained:
            raise ConfigurationError(
                f"{spec.name} has {spec.n_constraints} constraints; choose penalty 'additive' or 'static'"
            )
        return spec
    if not spec.constrained:
        raise ConfigurationError(f"{spec.name} is unconstrained; penalty must be 'none'")
    if config.penalty is Penalty.ADDITIVE:
        weights = PenaltyWeights.from_flat(spec, config.weights) if config.weights else None
        return additive_penalty_wrap(spec, weights)
    return static_penalty_wrap(spec, config.K)


def _single_run(config: ExperimentConfig, seed: int) -> RunResult:
    objective = build_objective(config)
    if config.algorithm is Algorithm.UEPS:
        return ueps_run(objective, config.params, seed)
    return pso_run(objective, config.params, seed)


def _aggregate(config, runs, parallel) -> BatchReport:
    vals = np.array([r.best_val for r in runs])
    pos = np.array([r.best_pos for r in runs])
    order = np.argsort(vals, kind="stable")
    feas = ()
    spec = lookup(config.problem)
    if spec.constrained:
        feas = tuple(
            {"raw_val": float(spec.func(r.best_pos)), **violations(spec, r.best_pos).to_dict()} for r in runs
        )
    return BatchReport(
        config=config,
        runs=tuple(runs),
        best_val=float(vals.min()),
        mean_val=float(vals.mean()),
        median_val=float(np.median(vals)),
        std_val=float(vals.std()),
        mean_best_pos=pos.mean(axis=0),
        median_best_pos=np.median(pos, axis=0),
        best_run=int(order[0]),
        # lower median for even counts
        median_run=int(order[(len(runs) - 1) // 2]),
        total_wall_time_s=float(sum(r.wall_time_s for r in runs)),
        evaluations_total=int(sum(r.evaluations for r in runs)),
        parallel=parallel,
        feasibility=feas,
    )


def run_batch(config: ExperimentConfig, jobs: int = 1) -> BatchReport:
    """Run ``config.n_runs`` seeded runs and aggregate them.

    ``jobs > 1`` spreads runs over worker processes; results are identical
    to the sequential path apart from wall times.
    """
    build_objective(config)  # configuration errors surface before any run
    seeds = config.seeds
    jobs = check_positive_int(jobs, "jobs")
    if jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(seeds))) as pool:
            runs = list(pool.map(_single_run, [config] * len(seeds), seeds))
        return _aggregate(config, runs, parallel=True)
    return _aggregate(config, [_single_run(config, s) for s in seeds], parallel=False)


def compare_algorithms(
    problems,
    ueps_params: UepsParams | None = None,
    pso_params: PsoParams | None = None,
    n_runs: int = 10,
    base_seed: int = 0,
    penalty=Penalty.NONE,
    jobs: int = 1,
) -> ComparisonReport:
    """UEPS and PSO batches on each problem, over the same seed range."""
    configs = []
    for name in problems:
        for algorithm, params in ((Algorithm.UEPS, ueps_params), (Algorithm.PSO, pso_params)):
            config = ExperimentConfig(name, algorithm, params, penalty, n_runs=n_runs, base_seed=base_seed)
            build_objective(config)
            configs.append(config)
    reports = [run_batch(c, jobs) for c in configs]
    return ComparisonReport(tuple(problems), tuple(reports[0::2]), tuple(reports[1::2]))


# --- serialization -------------------------------------------------------------


def _batch_to_dict(report: BatchReport, trace: bool = True) -> dict:
    cfg = report.config
    best, median = report.runs[report.best_run], report.runs[report.median_run]
    out = {
        "problem": cfg.problem,
        "algorithm": cfg.algorithm.value,
        "penalty": cfg.penalty.value,
        "params": cfg.params.to_dict(),
        "n_runs": cfg.n_runs,
        "base_seed": cfg.base_seed,
        "rng": RNG_NAME,
        "parallel": report.parallel,
        "runs": [r.to_dict(trace=trace) for r in report.runs],
        "aggregate": {
            "best_val": report.best_val,
            "mean_val": report.mean_val,
            "median_val": report.median_val,
            "std_val": report.std_val,
            "mean_best_pos": [float(v) for v in report.mean_best_pos],
            "median_best_pos": [float(v) for v in report.median_best_pos],
            "best_run": {"seed": best.seed, "best_pos": [float(v) for v in best.best_pos], "best_val": best.best_val},
            "median_run": {
                "seed": median.seed,
                "best_pos": [float(v) for v in median.best_pos],
                "best_val": median.best_val,
            },
            "total_wall_time_s": report.total_wall_time_s,
            "evaluations_total": report.evaluations_total,
        },
    }
    if cfg.penalty is Penalty.ADDITIVE:
        out["weights"] = list(cfg.weights)
    elif cfg.penalty is Penalty.STATIC:
        out["K"] = cfg.K
    if report.feasibility:
        for run, feas in zip(out["runs"], report.feasibility):
            run["feasibility"] = feas
    return out


def report_to_dict(report, trace: bool = True) -> dict:
    if isinstance(report, BatchReport):
        return _batch_to_dict(report, trace)
    return {
        "problems": list(report.problems),
        "batches": [_batch_to_dict(b, trace) for b in report.batches],
        "timing": {
            "ueps_wall_time_s": report.ueps_wall_time_s,
            "pso_wall_time_s": report.pso_wall_time_s,
            "total_wall_time_s": report.total_wall_time_s,
        },
    }


def _batch_from_dict(data: dict) -> BatchReport:
    algorithm = Algorithm(data["algorithm"])
    params_cls = UepsParams if algorithm is Algorithm.UEPS else PsoParams
    config = ExperimentConfig(
        problem=data["problem"],
        algorithm=algorithm,
        params=params_cls(**data["params"]),
        penalty=data["penalty"],
        weights=tuple(data.get("weights", ())),
        K=data.get("K", STATIC_PENALTY_K),
        n_runs=data["n_runs"],
        base_seed=data["base_seed"],
    )
    return _aggregate(config, [RunResult.from_dict(r) for r in data["runs"]], bool(data.get("parallel", False)))


def report_from_dict(data: dict):
    """Rebuild a report from :func:`report_to_dict` output; aggregates are recomputed."""
    if "batches" in data:
        batches = [_batch_from_dict(b) for b in data["batches"]]
        return ComparisonReport(tuple(data["problems"]), tuple(batches[0::2]), tuple(batches[1::2]))
    return _batch_from_dict(data)


def _fmt(v) -> str:
    text = f"{v:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _fmt_pos(pos) -> str:
    return "(" + ", ".join(_fmt(v) for v in pos) + ")"


def _markdown(batches) -> str:
    lines = [
        "| Problem | Algorithm | Runs | Best | Median | Mean | Std | Mean position | Best-run position |",
        "|---|---|---|---|---|---|---|---|---|",
    ]
    for b in batches:
        cfg = b.config
        lines.append(
            f"| {cfg.problem} | {cfg.algorithm.value.upper()} | {cfg.n_runs} | {_fmt(b.best_val)} | "
            f"{_fmt(b.median_val)} | {_fmt(b.mean_val)} | {_fmt(b.std_val)} | {_fmt_pos(b.mean_best_pos)} | "
            f"{_fmt_pos(b.runs[b.best_run].best_pos)} |"
        )
    return "\n".join(lines) + "\n"


def _csv(batches) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["problem", "algorithm", "penalty", "seed", "best_val", "best_pos", "wall_time_s", "evaluations"])
    for b in batches:
        cfg = b.config
        for r in b.runs:
            writer.writerow(
                [
                    cfg.problem,
                    cfg.algorithm.value,
                    cfg.penalty.value,
                    r.seed,
                    repr(float(r.best_val)),
                    ";".join(repr(float(v)) for v in r.best_pos),
                    repr(float(r.wall_time_s)),
                    r.evaluations,
                ]
            )
    return buf.getvalue()


def format_report(report, format: str = "json", trace: bool = True) -> str:
    """Render a batch or comparison report as ``json``, ``csv`` or ``markdown``."""
    format = format.lower()
    batches = [report] if isinstance(report, BatchReport) else report.batches
    if format == "json":
        return json.dumps(report_to_dict(report, trace), indent=2) + "\n"
    if format == "csv":
        return _csv(batches)
    if format == "markdown":
        text = _markdown(batches)
        if isinstance(report, ComparisonReport):
            text += (
                f"\nWall time: UEPS {_fmt(report.ueps_wall_time_s)} s, "
                f"PSO {_fmt(report.pso_wall_time_s)} s, total {_fmt(report.total_wall_time_s)} s\n"
            )
        return text
    raise ValueError(f"unknown format {format!r}; use json, csv or markdown")
