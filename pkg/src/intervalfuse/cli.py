"""Command-line front end.

Three subcommands:

* ``combine`` -- fold a stream of evidence records from stdin under one
  rule, emitting the running fusion (or only the final one).
* ``compare`` -- run a scenario file and print a table of rules side by
  side, graded against the scenario's expected intervals.
* ``audit``   -- run the randomized law audit and print its report.

Records travel as line-delimited JSON objects with named fields; output
is likewise one JSON object per line (``--table`` switches to a
human-readable table).  Exit codes: 0 success / all checks passed,
1 usage error or failed check, 2 malformed input, 3 total conflict.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import IO, Optional

from .audit import AuditConfig, run_audit
from .evidence import EvidenceInterval, InvalidIntervalError
from .geometry import WIDTH_FLOOR
from .rules import (
    RULE_MTP,
    DependencyParam,
    EmptyInputError,
    FusionReport,
    TotalConflictError,
    estimate_p,
    fold,
)
from .scenarios import ScenarioError, compare_scenario, load_scenario, parse_record

__all__ = ["main", "run", "EXIT_OK", "EXIT_USAGE", "EXIT_INPUT", "EXIT_CONFLICT"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_CONFLICT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures routed to exit code 1."""

    def error(self, message: str):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="intervalfuse",
        description="Combine interval-valued evidence about a binary hypothesis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    combine = sub.add_parser(
        "combine",
        help="fold evidence records from stdin under one rule",
        description=(
            "Read line-delimited JSON records {\"lower\": .., \"upper\": ..} from "
            "stdin and fold them incrementally, printing one cumulative report "
            "per record (or only the last one under --final)."
        ),
    )
    combine.add_argument("--rule", required=True, choices=["ds", "tp", "mtp"])
    combine.add_argument("--p", type=float, help="dependency exponent for mtp")
    combine.add_argument("--alpha1", type=float, help="dependency measure for mtp")
    combine.add_argument("--alpha2", type=float, help="dependency measure for mtp")
    combine.add_argument("--final", action="store_true", help="emit only the final report")
    combine.add_argument("--table", action="store_true", help="human-readable output")
    combine.add_argument(
        "--epsilon-width",
        type=float,
        default=WIDTH_FLOOR,
        help=f"width floor for the half-plane map (default {WIDTH_FLOOR:g})",
    )

    compare = sub.add_parser(
        "compare",
        help="run a scenario and compare rules side by side",
        description="Combine each evidence pair of a scenario under each of its rules.",
    )
    compare.add_argument("scenario", help="bundled scenario name or path to a JSON file")
    compare.add_argument("--table", action="store_true", help="human-readable output")
    compare.add_argument("--epsilon-width", type=float, default=WIDTH_FLOOR)

    audit = sub.add_parser(
        "audit",
        help="randomized audit of the rule's algebraic laws",
        description="Sample evidence and check the combination laws; print the report.",
    )
    audit.add_argument("--rule", required=True, choices=["ds", "tp", "mtp"])
    audit.add_argument("--trials", type=int, default=10000)
    audit.add_argument("--seed", type=int, default=42)
    audit.add_argument("--p", type=float, help="dependency exponent for mtp")
    audit.add_argument("--table", action="store_true", help="summary table instead of JSON")
    audit.add_argument("--epsilon-width", type=float, default=WIDTH_FLOOR)

    return parser


def _dependency_from_flags(args, err: IO[str]) -> Optional[DependencyParam]:
    """Resolve --p / --alpha1 / --alpha2 for the mtp rule."""
    if args.rule != "mtp":
        if args.p is not None or args.alpha1 is not None or args.alpha2 is not None:
            raise _UsageError("--p/--alpha1/--alpha2 only apply to --rule mtp")
        return None
    has_alphas = args.alpha1 is not None and args.alpha2 is not None
    if args.p is not None:
        if has_alphas or args.alpha1 is not None or args.alpha2 is not None:
            print("warning: both --p and alphas given; explicit --p wins", file=err)
        try:
            return DependencyParam(p=args.p)
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
    if has_alphas:
        try:
            return estimate_p(args.alpha1, args.alpha2)
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
    raise _UsageError("--rule mtp needs --p or both --alpha1 and --alpha2")


def _check_width_floor(value: float) -> float:
    if not (0.0 < value < 1.0):
        raise _UsageError(f"--epsilon-width must lie in (0, 1), got {value!r}")
    return value


def _report_line(report: FusionReport, count: int) -> str:
    doc = report.to_dict()
    doc["count"] = count
    return json.dumps(doc, sort_keys=True)


def _report_row(report: FusionReport, count: int) -> str:
    extra = ""
    if report.ds_conflict_mass is not None:
        extra = f"  K={report.ds_conflict_mass:.6g}"
    if report.p_used is not None:
        extra = f"  p={report.p_used:.6g}"
    return (
        f"{count:>5}  {report.rule:<4}  "
        f"[{report.result.lower:.6f}, {report.result.upper:.6f}]  "
        f"{report.width:.6f}  {str(report.conflict).lower():<8}{extra}"
    )


def _cmd_combine(args, stdin: IO[str], out: IO[str], err: IO[str]) -> int:
    dep = _dependency_from_flags(args, err)
    width_floor = _check_width_floor(args.epsilon_width)
    rule = args.rule.upper()

    if args.table:
        print("count  rule  interval                width     conflict", file=out)

    acc: Optional[EvidenceInterval] = None
    report: Optional[FusionReport] = None
    count = 0
    for lineno, line in enumerate(stdin, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            record = parse_record(obj)
        except (json.JSONDecodeError, ScenarioError) as exc:
            print(f"line {lineno}: malformed evidence record: {exc}", file=err)
            return EXIT_INPUT
        count += 1
        try:
            if acc is None:
                report = fold(rule, [record.interval], dep, width_floor=width_floor)
            else:
                report = fold(rule, [acc, record.interval], dep, width_floor=width_floor)
        except TotalConflictError as exc:
            print(f"line {lineno}: {exc}", file=err)
            return EXIT_CONFLICT
        acc = report.result
        if not args.final:
            print(_report_row(report, count) if args.table else _report_line(report, count), file=out)

    if report is None:
        print("no evidence records on stdin", file=err)
        return EXIT_INPUT
    if args.final:
        print(_report_row(report, count) if args.table else _report_line(report, count), file=out)
    return EXIT_OK


def _compare_table(rows: list[dict], rules: tuple[str, ...], out: IO[str]) -> None:
    header = "pair  evidences" + " " * 21
    for rule in rules:
        header += f"{rule:<26}"
    print(header, file=out)
    for row in rows:
        e1, e2 = row["evidences"]
        pair_txt = f"[{e1['lower']:g}, {e1['upper']:g}] * [{e2['lower']:g}, {e2['upper']:g}]"
        line = f"{row['pair']:>4}  {pair_txt:<30}"
        for rule in rules:
            cell = row["cells"][rule]
            cell_txt = f"[{cell['lower']:.4f}, {cell['upper']:.4f}]"
            if "pass" in cell:
                cell_txt += " PASS" if cell["pass"] else " FAIL"
            line += f"{cell_txt:<26}"
        print(line, file=out)


def _cmd_compare(args, out: IO[str], err: IO[str]) -> int:
    width_floor = _check_width_floor(args.epsilon_width)
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=err)
        return EXIT_INPUT
    for warning in scenario.warnings:
        print(f"warning: {warning}", file=err)
    try:
        rows = compare_scenario(scenario, width_floor=width_floor)
    except TotalConflictError as exc:
        print(f"total conflict while comparing: {exc}", file=err)
        return EXIT_CONFLICT

    if args.table:
        _compare_table(rows, scenario.rules, out)
    else:
        for row in rows:
            print(json.dumps(row, sort_keys=True), file=out)

    all_pass = all(
        cell.get("pass", True) for row in rows for cell in row["cells"].values()
    )
    return EXIT_OK if all_pass else EXIT_USAGE


def _audit_table(report, out: IO[str]) -> None:
    print(
        f"rule={report.rule} trials={report.trials} seed={report.seed} rng={report.rng}",
        file=out,
    )
    print(f"{'law':<20}{'pass':>10}{'fail':>8}{'skipped':>10}  worst violation", file=out)
    for law, res in report.laws.items():
        print(
            f"{law:<20}{res.passes:>10}{res.failures:>8}{res.skipped:>10}  "
            f"{res.worst_violation:.3e}",
            file=out,
        )
    print(f"failures_total={report.failures_total}", file=out)


def _cmd_audit(args, out: IO[str], err: IO[str]) -> int:
    width_floor = _check_width_floor(args.epsilon_width)
    if args.rule != "mtp" and args.p is not None:
        raise _UsageError("--p only applies to --rule mtp")
    if args.rule == "mtp" and args.p is None:
        raise _UsageError("--rule mtp needs --p")
    try:
        config = AuditConfig(
            seed=args.seed,
            trials=args.trials,
            rule=args.rule,
            p=args.p,
            width_floor=width_floor,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    report = run_audit(config)
    if args.table:
        _audit_table(report, out)
    else:
        print(report.to_json(), file=out)
    return EXIT_OK if report.failures_total == 0 else EXIT_USAGE


def main(
    argv: Optional[list[str]] = None,
    stdin: Optional[IO[str]] = None,
    stdout: Optional[IO[str]] = None,
    stderr: Optional[IO[str]] = None,
) -> int:
    """Entry point; returns the process exit code."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "combine":
            return _cmd_combine(args, stdin, stdout, stderr)
        if args.command == "compare":
            return _cmd_compare(args, stdout, stderr)
        return _cmd_audit(args, stdout, stderr)
    except _UsageError as exc:
        print(f"intervalfuse: error: {exc}", file=stderr)
        return EXIT_USAGE
    except EmptyInputError as exc:
        print(f"intervalfuse: {exc}", file=stderr)
        return EXIT_INPUT


def run() -> None:
    """Console-script wrapper."""
    raise SystemExit(main())


if __name__ == "__main__":
    run()
