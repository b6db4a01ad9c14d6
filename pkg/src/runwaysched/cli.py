"""Command-line front end: validate / solve / oracle / generate / bench / export-mip."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bench import GenSpec, run_benchmark, write_report
from .dual_runway import solve_dual_runway
from .errors import (
    HorizonRequiredError,
    InfeasibleInstanceError,
    InfeasibleOrderError,
    InstanceFormatError,
    OracleCapError,
    RunwaySchedError,
)
from .mip_export import export_mip
from .model import (
    RunwayMode,
    default_separation_model,
    instance_from_dict,
    load_instance,
    model_from_dict,
    save_instance,
    schedule_to_dict,
)
from .oracle import brute_force_optimum, dominance_dp_optimum
from .scheduling import analyze_sequence, forward_schedule
from .solving import SolverConfig
from .validation import validate_separation_model

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BAD_INSTANCE = 3
EXIT_INFEASIBLE = 4
EXIT_VALIDATION = 5
EXIT_ORACLE_CAP = 6


def _fail(code: int, kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def _write_out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_model(arg: str):
    if arg == "default":
        return default_separation_model()
    with open(arg, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "aircraft" in data:
        return instance_from_dict(data).model
    return model_from_dict(data.get("separations", data))


def _config_from_args(args) -> SolverConfig:
    values: dict = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, raw = line.partition("=")
                key = key.strip()
                raw = raw.strip()
                if key in ("workers", "beam", "exact_sweep_cap"):
                    values[key] = int(raw)
                else:
                    values[key] = raw.lower() in ("1", "true", "yes", "on")
    if getattr(args, "workers", None) is not None:
        values["workers"] = args.workers
    if getattr(args, "no_prune", False):
        values["prune"] = False
    if getattr(args, "beam", None) is not None:
        values["beam"] = args.beam
    return SolverConfig(**values)


def _solution_dict(instance, solution) -> dict:
    diag = analyze_sequence(instance, solution.schedule)
    out = schedule_to_dict(instance, solution.schedule, diag)
    # wall times stay off the artifact so identical runs emit identical bytes
    out["stats"] = {
        "candidates_generated": solution.stats.candidates_generated,
        "candidates_pruned": solution.stats.candidates_pruned,
        "incumbent_history": solution.stats.incumbent_history,
    }
    if solution.bounds is not None:
        out["bounds"] = {
            "lower_s": solution.bounds.lower,
            "upper_s": solution.bounds.upper,
            "certificate": solution.certificate,
        }
    return out


def cmd_validate(args) -> int:
    model = _load_model(args.model)
    report = validate_separation_model(model)
    for line in report.summary_lines():
        print(line)
    if report.passed:
        print("model passes every structural predicate")
        return EXIT_OK
    return _fail(EXIT_VALIDATION, "validation", f"{len(report.failed_ids())} predicates failed")


def cmd_solve(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"{args.infile}: not valid JSON: {exc}") from exc
    if args.mode:
        data["mode"] = args.mode
    instance = instance_from_dict(data)
    config = _config_from_args(args)
    if instance.mode is RunwayMode.DUAL:
        solution = solve_dual_runway(instance, config)
    else:
        from .single_runway import solve_single_runway

        solution = solve_single_runway(instance, config)
    _write_out(json.dumps(_solution_dict(instance, solution), indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    instance = load_instance(args.infile)
    if args.oracle == "brute":
        result = brute_force_optimum(instance, cap=args.cap or 10)
    else:
        result = dominance_dp_optimum(instance, cap=args.cap or 16)
    schedule = forward_schedule(instance, result.order)
    out = schedule_to_dict(instance, schedule)
    out["oracle"] = {"method": result.method, "explored": result.explored}
    _write_out(json.dumps(out, indent=2, sort_keys=True), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = GenSpec(
        count=args.count,
        task_mix=args.mix,
        t_e=args.t_e,
        t_w=args.t_w,
        seed=args.seed,
    )
    from .bench import generate_instance

    instance = generate_instance(spec)
    if args.out and args.out != "-":
        save_instance(instance, args.out)
    else:
        from .model import instance_to_dict

        _write_out(json.dumps(instance_to_dict(instance), indent=2, sort_keys=True), None)
    return EXIT_OK


def cmd_bench(args) -> int:
    counts = [int(v) for v in args.counts.split(",")]
    mixes = args.mixes.split(",")
    specs = [
        GenSpec(count=c, task_mix=m, t_e=args.t_e, t_w=args.t_w, seed=args.seed + k)
        for m in mixes
        for c in counts
        for k in range(args.seeds)
    ]
    rows = run_benchmark(specs, _config_from_args(args), oracle_cap=args.oracle_cap)
    print(write_report(rows, args.out))
    return EXIT_OK


def cmd_export_mip(args) -> int:
    instance = load_instance(args.infile)
    text = export_mip(instance, horizon=args.horizon)
    _write_out(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runwaysched",
        description="Total-delay runway scheduling: solvers, oracles, benchmarks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="audit a separation model's structure")
    p.add_argument("--model", default="default", help="'default' or a JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--mode", choices=["single", "dual"], default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--beam", type=int, default=None)
    p.add_argument("--config", default=None, help="flat key=value solver settings")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact optimum of a small instance")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--oracle", choices=["brute", "dp"], default="brute")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="draw a reproducible random instance")
    p.add_argument("--count", type=int, required=True)
    p.add_argument(
        "--mix",
        choices=["takeoff_only", "landing_only", "mixed", "dual"],
        default="mixed",
    )
    p.add_argument("--t-e", dest="t_e", type=int, default=20, help="spread of earliest times (min)")
    p.add_argument("--t-w", dest="t_w", type=int, default=60, help="window length (min)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="generate, solve, and report a benchmark grid")
    p.add_argument("--counts", default="30,40,50,60")
    p.add_argument("--mixes", default="takeoff_only,landing_only,mixed")
    p.add_argument("--t-e", dest="t_e", type=int, default=20)
    p.add_argument("--t-w", dest="t_w", type=int, default=60)
    p.add_argument("--seeds", type=int, default=1, help="seeds per (count, mix) cell")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--oracle-cap", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--beam", type=int, default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-mip", help="emit the LP-format sequencing model")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(func=cmd_export_mip)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceFormatError as exc:
        return _fail(EXIT_BAD_INSTANCE, "bad_instance", str(exc))
    except (InfeasibleInstanceError, InfeasibleOrderError) as exc:
        return _fail(EXIT_INFEASIBLE, "infeasible", str(exc))
    except OracleCapError as exc:
        return _fail(EXIT_ORACLE_CAP, "oracle_cap", str(exc))
    except HorizonRequiredError as exc:
        return _fail(EXIT_BAD_INSTANCE, "horizon_required", str(exc))
    except FileNotFoundError as exc:
        return _fail(EXIT_BAD_INSTANCE, "missing_file", str(exc))
    except RunwaySchedError as exc:
        return _fail(EXIT_USAGE, "error", str(exc))


if __name__ == "__main__":
    sys.exit(main())
