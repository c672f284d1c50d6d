"""Command-line interface: ``dampswarm {list,run,bench,compare,damping-curves}``."""

from __future__ import annotations

import argparse
import sys

from . import damping
from .core import DampswarmError, ParameterError, ProblemNotFoundError
from .harness import (
    Algorithm,
    ExperimentConfig,
    Penalty,
    build_objective,
    compare_algorithms,
    format_report,
    run_batch,
)
from .harness import _fmt as _f6
from .objectives import REGISTRY, STATIC_PENALTY_K, lookup, problem_names
from .pso import PsoParams
from .ueps import UepsParams

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _pos(pos) -> str:
    return "(" + ", ".join(_f6(v) for v in pos) + ")"


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _name_list(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def _add_algorithm_flags(p, with_algo=True):
    if with_algo:
        p.add_argument("--algo", choices=[a.value for a in Algorithm], default="ueps", help="optimizer (default ueps)")
    p.add_argument("--particles", type=int, default=50, help="swarm size (default 50)")
    p.add_argument("--iters", type=int, default=100, help="iterations (default 100)")
    g = p.add_argument_group("UEPS parameters")
    g.add_argument("--A", dest="amplitude", type=float, default=1.0, help="oscillation amplitude (default 1)")
    g.add_argument("--b", dest="damping_rate", type=float, default=0.007, help="damping rate (default 0.007)")
    g.add_argument("--alpha", type=float, default=0.8, help="perturbation factor (default 0.8)")
    g.add_argument("--kernel", choices=["text", "code"], default="code", help="oscillation kernel (default code)")
    g.add_argument("--pert", choices=["const", "geom"], default="geom", help="perturbation schedule (default geom)")
    g.add_argument(
        "--granularity", choices=["particle", "dimension"], default="particle", help="random draw granularity"
    )
    g = p.add_argument_group("PSO parameters")
    g.add_argument("--c1", type=float, default=1.9, help="cognitive coefficient (default 1.9)")
    g.add_argument("--c2", type=float, default=1.9, help="social coefficient (default 1.9)")
    g = p.add_argument_group("shared")
    g.add_argument("--w-min", type=float, default=0.4, help="final inertia weight (default 0.4)")
    g.add_argument("--w-max", type=float, default=0.9, help="initial inertia weight (default 0.9)")


def _add_penalty_flags(p):
    p.add_argument("--penalty", choices=[v.value for v in Penalty], default="none", help="constraint handling")
    p.add_argument("--K", type=float, default=STATIC_PENALTY_K, help="static penalty constant (default 1e9)")
    p.add_argument("--weights", type=_float_list, default=None, help="additive penalty weights w1,w2,...")


def _add_output_flags(p, formats=("json", "csv", "markdown", "plain")):
    p.add_argument("--format", choices=formats, default="plain", help="output format (default plain)")
    p.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    p.add_argument("--no-trace", action="store_true", help="omit per-iteration traces from JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dampswarm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("list", help="list registry problems")

    p = sub.add_parser("run", help="one optimization run")
    p.add_argument("--problem", required=True, help="registry name (see 'list')")
    p.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    _add_algorithm_flags(p)
    _add_penalty_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("bench", help="repeated runs with aggregate statistics")
    p.add_argument("--problem", required=True, help="registry name (see 'list')")
    p.add_argument("--runs", type=int, default=10, help="number of runs (default 10)")
    p.add_argument("--base-seed", type=int, default=0, help="seed of the first run (default 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    _add_algorithm_flags(p)
    _add_penalty_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("compare", help="UEPS against PSO on several problems")
    p.add_argument("--problems", type=_name_list, required=True, help="comma-separated registry names")
    p.add_argument("--runs", type=int, default=10, help="runs per algorithm and problem (default 10)")
    p.add_argument("--base-seed", type=int, default=0, help="seed of the first run (default 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    _add_algorithm_flags(p, with_algo=False)
    _add_output_flags(p)

    p = sub.add_parser("damping-curves", help="sample a damped oscillator curve as CSV")
    p.add_argument("--gamma", type=float, required=True, help="damping rate c/2m")
    p.add_argument("--omega0", type=float, required=True, help="natural frequency sqrt(k/m)")
    p.add_argument("--A", dest="amp_A", type=float, default=1.0, help="coefficient A (default 1)")
    p.add_argument("--B", dest="amp_B", type=float, default=0.0, help="coefficient B (default 0)")
    p.add_argument("--phi", type=float, default=0.0, help="phase in radians (default 0)")
    p.add_argument("--t-start", type=float, default=0.0, help="first sample time (default 0)")
    p.add_argument("--t-end", type=float, required=True, help="last sample time")
    p.add_argument("--samples", type=int, default=500, help="number of samples (default 500)")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    return parser


FLAG_NAMES = {
    "amplitude": "--A",
    "damping_rate": "--b",
    "alpha": "--alpha",
    "w_min": "--w-min",
    "w_max": "--w-max",
    "n_particles": "--particles",
    "max_iter": "--iters",
    "c1": "--c1",
    "c2": "--c2",
    "n_runs": "--runs",
    "seed": "--seed/--base-seed",
}


def _params(args, algorithm: Algorithm):
    try:
        return _make_params(args, algorithm)
    except ParameterError as exc:
        msg = str(exc)
        flag = next((f for name, f in FLAG_NAMES.items() if msg.startswith(name + " ")), None)
        raise UsageError(f"{flag}: {msg}" if flag else msg) from None


def _make_params(args, algorithm: Algorithm):
    if algorithm is Algorithm.UEPS:
        return UepsParams(
            amplitude=args.amplitude,
            damping_rate=args.damping_rate,
            alpha=args.alpha,
            w_min=args.w_min,
            w_max=args.w_max,
            n_particles=args.particles,
            max_iter=args.iters,
            kernel=args.kernel,
            perturbation=args.pert,
            granularity=args.granularity,
        )
    return PsoParams(args.c1, args.c2, args.w_min, args.w_max, args.particles, args.iters)


def _check_problem(name):
    try:
        lookup(name)
    except ProblemNotFoundError as exc:
        raise UsageError(str(exc)) from None


def _config(args, n_runs, base_seed) -> ExperimentConfig:
    _check_problem(args.problem)
    algorithm = Algorithm(args.algo)
    params = _params(args, algorithm)
    try:
        config = ExperimentConfig(
            problem=args.problem,
            algorithm=algorithm,
            params=params,
            penalty=args.penalty,
            weights=tuple(args.weights or ()),
            K=args.K,
            n_runs=n_runs,
            base_seed=base_seed,
        )
    except ParameterError as exc:
        raise UsageError(f"--runs/--seed: {exc}") from None
    try:
        build_objective(config)
    except DampswarmError as exc:
        raise UsageError(f"--penalty: {exc}") from None
    return config


def _plain_run(report) -> str:
    cfg = report.config
    run = report.runs[0]
    lines = [
        f"problem:    {cfg.problem}",
        f"algorithm:  {cfg.algorithm.value.upper()}",
        f"penalty:    {cfg.penalty.value}",
        f"seed:       {run.seed}",
        "params:     " + ", ".join(f"{k}={v}" for k, v in cfg.params.to_dict().items()),
        f"x*:         {_pos(run.best_pos)}",
        f"f(x*):      {_f6(run.best_val)}",
    ]
    if report.feasibility:
        feas = report.feasibility[0]
        status = "feasible" if feas["satisfied"] == feas["total"] else "INFEASIBLE"
        lines += [
            f"raw f(x*):  {_f6(feas['raw_val'])}",
            f"feasibility: {status}, {feas['satisfied']}/{feas['total']} constraints satisfied, "
            f"max relative violation {feas['max_relative_violation']:.6g}",
        ]
    lines += [
        f"evaluations: {run.evaluations}",
        f"wall time:  {_f6(run.wall_time_s)} s",
    ]
    return "\n".join(lines) + "\n"


def _plain_batch(report) -> str:
    cfg = report.config
    text = format_report(report, "markdown")
    seeds = report.seeds
    text += f"\nseeds {seeds[0]}..{seeds[-1]}, total wall time {_f6(report.total_wall_time_s)} s\n"
    if report.feasibility:
        ok = sum(1 for f in report.feasibility if f["satisfied"] == f["total"])
        text += f"feasible runs: {ok}/{cfg.n_runs}\n"
    return text


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_list(args):
    for name in problem_names():
        spec = REGISTRY[name]
        lo = ", ".join(f"{v:g}" for v in spec.bounds.lower)
        hi = ", ".join(f"{v:g}" for v in spec.bounds.upper)
        extra = f"  constraints={spec.n_constraints}" if spec.constrained else ""
        if spec.known_optimum is not None:
            extra += f"  f*={spec.known_optimum[1]:g}"
        print(f"{name:24s} d={spec.arity}  lower=[{lo}]  upper=[{hi}]{extra}")


def cmd_run(args):
    config = _config(args, 1, args.seed)
    report = run_batch(config)
    if args.format == "plain":
        text = _plain_run(report)
    else:
        text = format_report(report, args.format, trace=not args.no_trace)
    _emit(text, args.out)


def cmd_bench(args):
    config = _config(args, args.runs, args.base_seed)
    report = run_batch(config, jobs=args.jobs)
    if args.format == "plain":
        text = _plain_batch(report)
    else:
        text = format_report(report, args.format, trace=not args.no_trace)
    _emit(text, args.out)


def cmd_compare(args):
    for name in args.problems:
        _check_problem(name)
        if lookup(name).constrained:
            raise UsageError(f"--problems: {name} is constrained; compare runs box-only problems")
    report = compare_algorithms(
        args.problems,
        _params(args, Algorithm.UEPS),
        _params(args, Algorithm.PSO),
        n_runs=args.runs,
        base_seed=args.base_seed,
        jobs=args.jobs,
    )
    fmt = "markdown" if args.format == "plain" else args.format
    _emit(format_report(report, fmt, trace=not args.no_trace), args.out)


def cmd_damping(args):
    try:
        params = damping.OscillatorParams.from_rates(args.gamma, args.omega0, args.amp_A, args.amp_B, args.phi)
        samples = damping.sample_curve(params, args.t_start, args.t_end, args.samples)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    regime = damping.classify_regime(params)
    _emit(damping.curve_to_csv(samples), args.out)
    print(
        f"regime: {regime.value} (gamma={_f6(params.gamma)}, omega0={_f6(params.omega0)})",
        file=sys.stderr if args.out is None else sys.stdout,
    )


COMMANDS = {
    "list": cmd_list,
    "run": cmd_run,
    "bench": cmd_bench,
    "compare": cmd_compare,
    "damping-curves": cmd_damping,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dampswarm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DampswarmError, ValueError, OSError) as exc:
        print(f"dampswarm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
