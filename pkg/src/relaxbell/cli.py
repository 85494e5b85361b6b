"""Command-line front end.

Exit codes: 0 success (or feasible), 2 usage error, 3 infeasible, 4 invalid model file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from relaxbell import bounds, hvmodel, metrics, oracle, saturate
from relaxbell.errors import ParameterError, ValidationError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_INVALID = 4


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _cmd_bound(args) -> int:
    result = bounds.chsh_bound(args.i2, args.s12, args.m2)
    print(f"{_fmt(result.value)} {result.regime}")
    return EXIT_OK


def _cmd_metrics(args) -> int:
    prof = metrics.profile(hvmodel.load_model(args.model))
    for name, value in prof.to_dict().items():
        print(f"{name} {_fmt(value)}")
    return EXIT_OK


def _cmd_saturate(args) -> int:
    if args.kind == "mi":
        model = saturate.mi_saturating_model(args.i2, args.s12)
    elif args.kind == "table1":
        model = saturate.table1_model(args.p)
    else:
        model = saturate.combined_saturating_model(args.i2, args.s12, args.m2)
    hvmodel.save_model(model, args.out)
    print(f"chsh {_fmt(hvmodel.chsh(model))}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    report = oracle.max_chsh_search(args.i2, args.s12, args.m2, args.resolution)
    bound = bounds.chsh_bound(args.i2, args.s12, args.m2)
    gap = bound.value - report.best_chsh
    print(f"bound {_fmt(bound.value)} {bound.regime}")
    print(f"best_chsh {_fmt(report.best_chsh)}")
    print(f"gap {gap:.3e}")
    print(f"sound {report.best_chsh <= bound.value + oracle.SOUNDNESS_TOL}")
    print(f"p {_fmt(report.p)}")
    for label, e, j, t in zip(
        report.argmax_model.lambdas, report.per_lambda_e, report.per_lambda_j, report.per_lambda_t
    ):
        print(f"{label} E {_fmt(e)} J {_fmt(j)} T {_fmt(t)}")
    hvmodel.save_model(report.argmax_model, args.out)
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK


def _cmd_tradeoff(args) -> int:
    bounds.tradeoff_grid(args.figure, args.resolution).write_csv(args.out)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    result = hvmodel.sample_experiment(hvmodel.load_model(args.model), args.runs, args.seed)
    print(f"estimate {_fmt(result.estimate)}")
    print("runs_per_context " + " ".join(str(r) for r in result.runs_per_context))
    return EXIT_OK


def _cmd_feasible(args) -> int:
    ok = bounds.feasible(args.i2, args.s12, args.m2, args.v)
    result = bounds.chsh_bound(args.i2, args.s12, args.m2)
    print(f"{'feasible' if ok else 'infeasible'} {_fmt(result.value)} {result.regime}")
    return EXIT_OK if ok else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relaxbell", description="One-sided relaxed Bell-CHSH bounds")
    sub = parser.add_subparsers(dest="verb", required=True)

    def degrees(p, m2=True):
        p.add_argument("--i2", type=float, required=True)
        p.add_argument("--s12", type=float, required=True)
        if m2:
            p.add_argument("--m2", type=float, required=True)

    p = sub.add_parser("bound", help="closed-form bound and regime")
    degrees(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("metrics", help="relaxation profile of a model file")
    p.add_argument("--model", required=True)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("saturate", help="write a bound-saturating model file")
    p.add_argument("--kind", choices=("mi", "table1", "combined"), required=True)
    p.add_argument("--i2", type=float, default=0.0)
    p.add_argument("--s12", type=float, default=0.0)
    p.add_argument("--m2", type=float, default=0.0)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_saturate)

    p = sub.add_parser("oracle", help="brute-force search against the bound")
    degrees(p)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--out", default="argmax_model.json", help="argmax model file")
    p.add_argument("--report", help="optional JSON file for the full search report")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("tradeoff", help="CSV data for the tradeoff figures")
    p.add_argument("--figure", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--resolution", type=int, default=101)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_tradeoff)

    p = sub.add_parser("simulate", help="Monte Carlo CHSH estimate for a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("feasible", help="exit 0 if 2 + v is reachable, 3 otherwise")
    degrees(p)
    p.add_argument("--v", type=float, required=True)
    p.set_defaults(func=_cmd_feasible)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParameterError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
