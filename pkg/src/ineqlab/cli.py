"""Command line front end.

Exit codes: 0 all checks passed, 1 a mathematical violation was found,
2 config/IO/parse error, 3 precondition rejection in single-check mode.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chains import ToleranceConfig
from .ensembles import EnsembleConfig
from .errors import DimensionMismatch, IneqLabError, InvalidInput, PreconditionError
from .harness import (
    REGISTRY,
    check_single,
    default_config,
    derive_entry_seed,
    execute_plans,
    parse_config,
    run_all,
    suite_names,
    write_csv,
    write_report,
)
from .linalg import load_matrix, operator_norm, vector_to_json_dict
from .radius import RadiusSweepConfig, numerical_radius


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ineqlab",
        description="Verify inner-product, operator-norm and numerical-radius inequality chains "
        "over seeded random ensembles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run",
        help="run suites from a config file, one named suite, or the built-in default set",
    )
    run_p.add_argument("--config", help="JSON config path (mutually exclusive with --suite)")
    run_p.add_argument("--suite", choices=suite_names(), help="run a single registered suite")
    run_p.add_argument("--family", help="ensemble family (defaults to the suite's own)")
    run_p.add_argument("--dim", type=int, help="matrix/vector dimension")
    run_p.add_argument("--trials", type=int, help="number of seeded trials")
    run_p.add_argument("--seed", type=int, help="64-bit master seed")
    run_p.add_argument("--out", help="report path (default report.json, or the config's output)")
    run_p.add_argument("--csv", help="also write a flattened CSV to this path")
    run_p.add_argument("--jobs", type=int, default=1, help="worker threads for trials (default 1)")

    check_p = sub.add_parser("check", help="evaluate one check on explicit JSON inputs")
    check_p.add_argument("name", help="check name (see 'ineqlab run --help' suite list)")
    check_p.add_argument(
        "--in", dest="inputs", nargs="+", required=True, metavar="FILE",
        help="input files, positional per the check signature",
    )

    omega_p = sub.add_parser("omega", help="numerical radius of one matrix")
    omega_p.add_argument("--in", dest="input", required=True, metavar="FILE")
    omega_p.add_argument(
        "--coarse-points", type=int, default=720,
        help="angle grid size for the sweep (default 720)",
    )
    return parser


def _cmd_run(args) -> int:
    suite_flags = [args.suite, args.family, args.dim, args.trials, args.seed]
    if args.config is not None and any(flag is not None for flag in suite_flags):
        print("error: use either --config or the --suite flag group, not both", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print(f"error: --jobs must be at least 1, got {args.jobs}", file=sys.stderr)
        return 2

    if args.config is not None:
        return run_all(
            args.config,
            jobs=args.jobs,
            output_override=args.out,
            csv_path=args.csv,
            progress=print,
        )

    try:
        if args.suite is not None:
            spec = REGISTRY[args.suite]
            family = args.family if args.family is not None else spec.family
            dim = args.dim if args.dim is not None else spec.default_dim
            trials = args.trials if args.trials is not None else spec.default_trials
            seed = args.seed if args.seed is not None else derive_entry_seed(spec.name, dim)
            ensemble = EnsembleConfig(family=family, dim=dim, master_seed=seed, trials=trials)
            plans = [(spec, ensemble)]
            tol = ToleranceConfig()
        else:
            tol, plans, _ = parse_config(default_config())
        reports, all_ok = execute_plans(plans, tol, jobs=args.jobs, progress=print)
        destination = args.out if args.out is not None else "report.json"
        write_report(reports, destination)
        if args.csv is not None:
            write_csv(reports, args.csv)
        print(f"report written to {destination}")
    except IneqLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if all_ok else 1


def _cmd_check(args) -> int:
    try:
        result = check_single(args.name, args.inputs)
    except (PreconditionError, DimensionMismatch) as exc:
        print(f"precondition rejected: {exc}", file=sys.stderr)
        return 3
    except IneqLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(result.to_dict(), indent=2))
    return 0 if result.passed else 1


def _cmd_omega(args) -> int:
    try:
        matrix = load_matrix(args.input)
        sweep = RadiusSweepConfig(coarse_points=args.coarse_points)
        result = numerical_radius(matrix, sweep)
        document = {
            "omega": result.omega,
            "argmax_angle": result.argmax_angle,
            "operator_norm": operator_norm(matrix),
            "witness": vector_to_json_dict(result.witness),
        }
    except IneqLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(document, indent=2))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "check":
        return _cmd_check(args)
    return _cmd_omega(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
