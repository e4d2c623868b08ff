"""Command-line front end: optimize, constraints, region, tradeoff, verify, simulate.

Every numeric flag accepts a decimal string or a p/q fraction, all output is
deterministic for fixed flags and seed, and exit codes are scriptable:
0 success, 1 usage or input error, 2 infeasible rate, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .core import Allocation, SystemParams, format_ratio, parse_ratio, validate
from .constraints import generate_constraints, min_beta
from .lp import Infeasible, solve
from .flowgraph import (
    DcProbe,
    ScenarioError,
    parse_scenario,
    random_history,
    run_scenario,
    verify_allocation,
)
from .gf import FIELDS
from .rlnc import PacketizationError, simulate_trials
from .tradeoff import region_boundary, sweep

ENV_SEED = "REGENALLOC_SEED"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 instead of argparse's default 2
        raise _UsageError(message)


def _ratio_flag(text: str) -> Fraction:
    try:
        return parse_ratio(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a decimal or p/q ratio: {text!r}") from exc


def _add_system_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n1", type=int, required=True, help="number of type-1 nodes")
    parser.add_argument("--n2", type=int, required=True, help="number of type-2 nodes")
    parser.add_argument("--k", type=int, required=True, help="nodes a collector reads")
    parser.add_argument("--d", type=int, required=True, help="helpers per repair")
    parser.add_argument("--file-size", type=_ratio_flag, required=True, help="file size M")
    parser.add_argument("--c1", type=_ratio_flag, default=Fraction(1), help="unit cost on type-1 nodes")
    parser.add_argument("--c2", type=_ratio_flag, default=Fraction(1), help="unit cost on type-2 nodes")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", type=Path, default=None, help="output path (default stdout)")


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise _UsageError(f"{ENV_SEED} must be an integer, got {env!r}") from exc
    return 0


def _params_from(args: argparse.Namespace, beta: Fraction) -> SystemParams:
    params = SystemParams(
        n1=args.n1, n2=args.n2, k=args.k, d=args.d,
        file_size=args.file_size, beta=beta, c1=args.c1, c2=args.c2,
    )
    report = validate(params)
    if not report.ok:
        raise _UsageError("invalid parameters: " + "; ".join(report.violations))
    return params


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")


def _table(args: argparse.Namespace, header: list[str], rows: list[list[str]]) -> str:
    if args.format == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in rows)
        return "\n".join(lines) + "\n"
    records = [dict(zip(header, row)) for row in rows]
    return json.dumps(records, indent=2, sort_keys=True) + "\n"


def cmd_optimize(args: argparse.Namespace) -> int:
    params = _params_from(args, args.beta)
    try:
        best = solve(params)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    rows = [[
        format_ratio(best.alpha1_star),
        format_ratio(best.alpha2_star),
        format_ratio(best.cost_star),
        best.case_label,
        ";".join(str(i) for i in best.binding),
    ]]
    _emit(args, _table(args, ["alpha1", "alpha2", "cost", "case", "binding"], rows))
    return 0


def cmd_constraints(args: argparse.Namespace) -> int:
    params = _params_from(args, args.beta)
    rows = []
    for idx, plane in enumerate(generate_constraints(params)):
        rows.append([
            str(idx),
            str(idx // 2),
            "type1_heavy" if idx % 2 == 0 else "type2_heavy",
            format_ratio(plane.coef1),
            format_ratio(plane.coef2),
            format_ratio(plane.rhs),
        ])
    _emit(args, _table(args, ["index", "m", "family", "coef1", "coef2", "rhs"], rows))
    return 0


def cmd_region(args: argparse.Namespace) -> int:
    params = _params_from(args, args.beta)
    try:
        boundary = region_boundary(params)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    rows = [[format_ratio(p.alpha1), format_ratio(p.alpha2)] for p in boundary]
    _emit(args, _table(args, ["alpha1", "alpha2"], rows))
    return 0


def cmd_tradeoff(args: argparse.Namespace) -> int:
    params = _params_from(args, args.beta_lo)
    try:
        points = sweep(params, args.beta_lo, args.beta_hi, args.steps)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    rows = [
        [
            format_ratio(p.beta),
            format_ratio(p.repair_bandwidth),
            format_ratio(p.alpha1_star),
            format_ratio(p.alpha2_star),
            format_ratio(p.cost_star),
        ]
        for p in points
    ]
    _emit(args, _table(args, ["beta", "d_beta", "alpha1", "alpha2", "cost"], rows))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    params = _params_from(args, args.beta)
    alloc = Allocation(args.alpha1, args.alpha2)
    seed = _resolve_seed(args.seed)
    if args.scenario is not None:
        try:
            items = parse_scenario(args.scenario.read_text(encoding="utf-8"), params)
        except ScenarioError as exc:
            print(f"scenario error: {exc}", file=sys.stderr)
            return 1
        if any(isinstance(item, DcProbe) for item in items):
            report = run_scenario(params, alloc, items)
        else:
            history = [item for item in items if not isinstance(item, DcProbe)]
            report = verify_allocation(
                params, alloc, history, policy=args.dc, samples=args.dc_samples, seed=seed
            )
    else:
        history = list(random_history(params, args.random_history, seed))
        report = verify_allocation(
            params, alloc, history, policy=args.dc, samples=args.dc_samples, seed=seed
        )
    lines = [f"checks: {report.checks}"]
    if report.min_flow is not None:
        lines.append(f"min flow: {format_ratio(report.min_flow)}")
        lines.append(f"file size: {format_ratio(report.file_size)}")
    lines.append(f"result: {'PASS' if report.ok else 'FAIL'}")
    if not report.ok:
        lines.append(
            f"violating dc: {','.join(str(n) for n in report.worst_dc)} "
            f"at stage {report.worst_stage} with cut {format_ratio(report.min_flow)}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return 0 if report.ok else 3


def cmd_simulate(args: argparse.Namespace) -> int:
    params = _params_from(args, args.beta)
    alloc = Allocation(args.alpha1, args.alpha2)
    seed = _resolve_seed(args.seed)
    fld = FIELDS[args.field]
    try:
        report = simulate_trials(
            params,
            alloc,
            fld,
            trials=args.trials,
            repairs_per_trial=args.repairs,
            seed=seed,
            dc_samples=args.dc_samples,
        )
    except PacketizationError as exc:
        print(f"packetization error: {exc}", file=sys.stderr)
        return 1
    lines = []
    for nodes in sorted(report.per_dc):
        won, tried = report.per_dc[nodes]
        lines.append(f"dc {','.join(str(n) for n in nodes)}: {won}/{tried}")
    lines.append(
        f"overall: {report.successes}/{report.checks} = {report.success_rate:.4f}"
    )
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="regenalloc", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    optimize = sub.add_parser("optimize", help="minimum-cost allocation for one instance")
    _add_system_flags(optimize)
    optimize.add_argument("--beta", type=_ratio_flag, required=True, help="units per helper")
    _add_output_flags(optimize)
    optimize.set_defaults(func=cmd_optimize)

    constraints_p = sub.add_parser("constraints", help="emit the compact constraint rows")
    _add_system_flags(constraints_p)
    constraints_p.add_argument("--beta", type=_ratio_flag, required=True)
    _add_output_flags(constraints_p)
    constraints_p.set_defaults(func=cmd_constraints)

    region = sub.add_parser("region", help="emit the feasible-region boundary")
    _add_system_flags(region)
    region.add_argument("--beta", type=_ratio_flag, required=True)
    _add_output_flags(region)
    region.set_defaults(func=cmd_region)

    tradeoff_p = sub.add_parser("tradeoff", help="sweep the rate and emit the cost curve")
    _add_system_flags(tradeoff_p)
    tradeoff_p.add_argument("--beta-lo", type=_ratio_flag, required=True)
    tradeoff_p.add_argument("--beta-hi", type=_ratio_flag, required=True)
    tradeoff_p.add_argument("--steps", type=int, default=17)
    _add_output_flags(tradeoff_p)
    tradeoff_p.set_defaults(func=cmd_tradeoff)

    verify = sub.add_parser("verify", help="replay repairs and check collectors by max-flow")
    _add_system_flags(verify)
    verify.add_argument("--beta", type=_ratio_flag, required=True)
    verify.add_argument("--alpha1", type=_ratio_flag, required=True)
    verify.add_argument("--alpha2", type=_ratio_flag, required=True)
    source = verify.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", type=Path, help="scenario file (repair/dc lines)")
    source.add_argument("--random-history", type=int, metavar="N", help="N seeded random repairs")
    verify.add_argument("--dc", choices=("exhaustive", "sample"), default="exhaustive")
    verify.add_argument("--dc-samples", type=int, default=50)
    verify.add_argument("--seed", type=int, default=None)
    _add_output_flags(verify)
    verify.set_defaults(func=cmd_verify)

    simulate = sub.add_parser("simulate", help="random-linear-coding repair/reconstruction trials")
    _add_system_flags(simulate)
    simulate.add_argument("--beta", type=_ratio_flag, required=True)
    simulate.add_argument("--alpha1", type=_ratio_flag, required=True)
    simulate.add_argument("--alpha2", type=_ratio_flag, required=True)
    simulate.add_argument("--trials", type=int, default=200)
    simulate.add_argument("--repairs", type=int, default=5)
    simulate.add_argument("--field", choices=tuple(FIELDS), default="gf256")
    simulate.add_argument("--dc-samples", type=int, default=None)
    simulate.add_argument("--seed", type=int, default=None)
    _add_output_flags(simulate)
    simulate.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
