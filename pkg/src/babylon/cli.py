"""Command-line interface: ``babylon eval|convert|solve|paper|tables``.

Exit codes: 0 success, 1 usage, 2 parse error, 3 domain error,
4 scenario mismatch.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

from .errors import BabylonError, ScenarioMismatch
from .expr import evaluate
from .interest import (
    DecimalLogTable,
    LogTable,
    builtin_log_table,
    load_log_tables,
    solve_duration_interpolated,
    solve_duration_log_approx,
    solve_duration_modern,
    solve_duration_table,
    solve_principal,
)
from .metrology import builtin_system, convert, load_unit_table, parse_quantity
from .records import OutputRecord
from .scenarios import SCENARIOS, run_scenario
from .sexagesimal import RoundingMode, format_sex, is_regular

EXIT_USAGE = 1

METHODS = ("log-approx", "table", "interpolate", "modern")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="emit JSON objects instead of text")
    parser.add_argument("--places", type=int, default=default(20), metavar="N",
                        help="fractional sexagesimal places (default 20)")
    parser.add_argument("--mode", choices=[m.value for m in RoundingMode], default=default("floor"),
                        help="rounding when an expansion does not terminate")
    parser.add_argument("--units", metavar="FILE", default=default(None),
                        help="unit/log table document merged over the built-ins")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="babylon", description="Exact sexagesimal arithmetic and ancient interest problems.")
    _common(parser, suppress=False)
    common = _Parser(add_help=False)
    _common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression over sexagesimal literals")
    p.add_argument("expr")

    p = sub.add_parser("convert", parents=[common], help="convert a transliterated quantity")
    p.add_argument("quantity")
    p.add_argument("--to", required=True, dest="target", metavar="UNIT")

    p = sub.add_parser("solve", parents=[common], help="solve for a principal or a duration")
    p.add_argument("kind", choices=("principal", "duration"))
    p.add_argument("--total", help="amount due (principal problems)")
    p.add_argument("--rate", help="interest rate per period, e.g. 0;12 or 1/5")
    p.add_argument("--n", type=int, help="number of periods (principal problems)")
    p.add_argument("--k", help="growth multiple (duration problems)")
    p.add_argument("--method", choices=METHODS, default="interpolate")
    p.add_argument("--base", type=int, default=2, help="table base (table method)")
    p.add_argument("--period", default="1", help="years per compounding period (table method)")
    p.add_argument("--months-per-year", type=int, default=12)
    p.add_argument("--log2", default="301/1000", help="log 2 approximation (log-approx method)")
    p.add_argument("--log3", default="477/1000", help="log 3 approximation (log-approx method)")

    p = sub.add_parser("paper", parents=[common], help="replay a historical computation and verify it")
    p.add_argument("scenario", choices=sorted(SCENARIOS) + ["all"])

    p = sub.add_parser("tables", parents=[common], help="list unit, log or reciprocal tables")
    p.add_argument("which", nargs="?", choices=("units", "log", "reciprocals"), default="units")
    return parser


def _number(text: str | None, flag: str) -> Fraction:
    """Flag value: plain decimal or ``p/q`` first, else a sexagesimal expression."""
    if text is None:
        raise UsageError(f"{flag} is required")
    if ";" not in text and "," not in text:
        try:
            return Fraction(text.strip())
        except ValueError:
            pass
    return evaluate(text)


def _read_units(path):
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, record: OutputRecord, out):
    if args.json:
        print(record.to_json(), file=out)
    else:
        for line in record.lines():
            print(line, file=out)


def cmd_eval(args, out):
    return OutputRecord.of(evaluate(args.expr), args.places, args.mode)


def cmd_convert(args, out):
    text = _read_units(args.units)
    system = load_unit_table(text) if text is not None else builtin_system()
    value = convert(parse_quantity(args.quantity, system), args.target, system)
    return OutputRecord.of(value, args.places, args.mode)


def _log_table(args, base) -> LogTable:
    text = _read_units(args.units)
    if text is not None:
        tables = load_log_tables(text)
        if base in tables:
            return tables[base]
    return builtin_log_table() if base == 2 else LogTable.powers(base, 20)


def cmd_solve(args, out):
    if args.kind == "principal":
        if args.n is None:
            raise UsageError("--n is required")
        value = solve_principal(_number(args.total, "--total"), _number(args.rate, "--rate"), args.n)
        return OutputRecord.of(value, args.places, args.mode)
    k = _number(args.k, "--k")
    if args.method == "table":
        solution = solve_duration_table(k, args.base, _number(args.period, "--period"),
                                        _log_table(args, args.base))
    elif args.method == "log-approx":
        table = DecimalLogTable({2: _number(args.log2, "--log2"), 3: _number(args.log3, "--log3")})
        solution = solve_duration_log_approx(k, _number(args.rate, "--rate"), table)
    elif args.method == "modern":
        solution = solve_duration_modern(k, _number(args.rate, "--rate"), args.places)
    else:
        solution = solve_duration_interpolated(k, _number(args.rate, "--rate"), args.months_per_year)
    return OutputRecord.of(solution.years, args.places, args.mode, method=solution.method,
                           bracket=solution.bracket, months=solution.months_deducted)


def cmd_paper(args, out):
    names = sorted(SCENARIOS) if args.scenario == "all" else [args.scenario]
    failed = []
    for name in names:
        checks = run_scenario(name)
        if args.json:
            print(json.dumps({"scenario": name, "ok": all(c.ok for c in checks),
                              "checks": [{"label": c.label, "actual": c.actual, "expected": c.expected,
                                          "ok": c.ok} for c in checks]}, ensure_ascii=False), file=out)
        else:
            print(f"== {name}", file=out)
            for c in checks:
                if c.ok:
                    print(f"ok    {c.label}: {c.actual}", file=out)
                else:
                    print(f"FAIL  {c.label}: {c.actual} (expected {c.expected})", file=out)
        failed += [f"{name}: {c.label}" for c in checks if not c.ok]
    if failed:
        raise ScenarioMismatch("; ".join(failed))


def cmd_tables(args, out):
    text = _read_units(args.units)
    if args.which == "units":
        system = load_unit_table(text) if text is not None else builtin_system()
        for u in system.units.values():
            print(f"unit     {u.name:<10} {format_sex(u.sila_equivalent, args.places).text:>12}  sìla", file=out)
        for n in system.numerals.values():
            print(f"numeral  {n.name:<10} {format_sex(n.value).text:>12}  ({n.value})", file=out)
    elif args.which == "log":
        tables = load_log_tables(text) if text is not None else {}
        tables.setdefault(2, builtin_log_table())
        for base in sorted(tables):
            for arg, exp in tables[base].entries:
                print(f"logentry {base} {format_sex(arg).text:>12}  {exp}", file=out)
    else:
        for n in range(2, 82):
            if is_regular(n):
                print(f"{n:>3}  {format_sex(Fraction(1, n)).text}", file=out)


COMMANDS = {
    "eval": cmd_eval,
    "convert": cmd_convert,
    "solve": cmd_solve,
    "paper": cmd_paper,
    "tables": cmd_tables,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        record = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"babylon: error: {exc}", file=err)
        return EXIT_USAGE
    except ScenarioMismatch as exc:
        print(f"babylon: mismatch: {exc}", file=err)
        return exc.exit_code
    except BabylonError as exc:
        print(f"babylon: {type(exc).__name__}: {exc}", file=err)
        return exc.exit_code
    except (ZeroDivisionError, ValueError) as exc:
        print(f"babylon: {exc}", file=err)
        return 3
    if record is not None:
        _emit(args, record, out)
    return 0


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
