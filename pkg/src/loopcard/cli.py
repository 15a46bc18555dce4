"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (or an internal
identity breaks), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

from . import caps
from .errors import LoopcardError
from .groupoid import FiniteGroupoid, homotopy_cardinality
from .invariants import (
    Result,
    en_cardinality,
    format_exact,
    free_loop,
    morava_euler,
    within_paper_hypothesis,
)
from .spacexpr import SpaceValue, evaluate, parse, pretty
from .stable import em_space, stable_hcard
from .verify import SUITES, run_suites

SCHEMA = "loopcard-report/1"


def parse_range(text: str) -> list[int]:
    """``"3"`` -> [3]; ``"1..4"`` -> [1, 2, 3, 4]."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n or a..b, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"range must satisfy 0 <= a <= b, got {text!r}")
    return list(range(lo, hi + 1))


def _positive(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--stable-output", action="store_true", help="never emit timing fields")
    common.add_argument("--timing", action="store_true", help="add elapsed microseconds to JSON output")
    common.add_argument("--order-cap", type=int, help=f"group order cap (default {caps.ORDER_CAP})")
    common.add_argument("--component-cap", type=int, help=f"groupoid component cap (default {caps.COMPONENT_CAP})")
    common.add_argument("--work-cap", type=int, help=f"brute-force tuple cap (default {caps.WORK_CAP})")
    common.add_argument("--table-cap", type=int, help=f"Cayley table entry cap (default {caps.TABLE_CAP})")

    parser = argparse.ArgumentParser(prog="loopcard", description="Cardinalities of pi-finite spaces at height n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("card", parents=[common], help="height-n cardinality |A|_{E_n}")
    p.add_argument("-n", type=parse_range, required=True, metavar="N|A..B")
    p.add_argument("-p", type=int, required=True, metavar="PRIME")
    p.add_argument("expr")

    p = sub.add_parser("euler", parents=[common], help="Morava-Euler characteristic chi_n")
    p.add_argument("-n", type=parse_range, required=True, metavar="N|A..B")
    p.add_argument("expr")

    p = sub.add_parser("hcard", parents=[common], help="homotopy cardinality")
    p.add_argument("expr")

    p = sub.add_parser("loop", parents=[common], help="print the k-fold free loop space")
    p.add_argument("-k", type=_positive, required=True)
    p.add_argument("expr")

    p = sub.add_parser("verify", parents=[common], help="run self-check suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")

    p = sub.add_parser("table", parents=[common], help="tabulate |B^d C_p|_{E_n}")
    p.add_argument("--em", nargs=2, type=_positive, required=True, metavar=("DMAX", "NMAX"))
    p.add_argument("-p", type=int, required=True, metavar="PRIME")
    return parser


def _space(expr: str) -> tuple[str, SpaceValue]:
    e = parse(expr)
    return pretty(e), evaluate(e)


def cmd_card(args) -> tuple[list[Result], list[str]]:
    label, value = _space(args.expr)
    method = "groupoid-loop-recursion" if value.kind == "groupoid" else "loop-space-formula"
    results = [
        Result("en_cardinality", label, n, en_cardinality(value, n, args.p), method, True, p=args.p)
        for n in args.n
    ]
    return results, _value_lines(results)


def cmd_euler(args) -> tuple[list[Result], list[str]]:
    label, value = _space(args.expr)
    inside = within_paper_hypothesis(value)
    method = "groupoid-loop-recursion" if value.kind == "groupoid" else "stable-loop"
    results = [Result("morava_euler", label, n, morava_euler(value, n), method, inside) for n in args.n]
    lines = _value_lines(results)
    if not inside:
        lines = [line + "  (outside paper hypothesis: not a p-space)" for line in lines]
    return results, lines


def cmd_hcard(args) -> tuple[list[Result], list[str]]:
    label, value = _space(args.expr)
    space = value.space
    if isinstance(space, FiniteGroupoid):
        x, method = homotopy_cardinality(space), "groupoid-sum"
    else:
        x, method = stable_hcard(space), "alternating-orders"
    res = Result("homotopy_cardinality", label, None, x, method, within_paper_hypothesis(value))
    return [res], [str(format_exact(x))]


def cmd_loop(args) -> tuple[list[Result], list[str]]:
    label, value = _space(args.expr)
    space = value.space
    for _ in range(args.k):
        space = free_loop(space)
    looped = SpaceValue(space, value.provenance)
    record = {"quantity": "loop", "space": label, "k": args.k, "value": looped.to_json()}
    return [record], [looped.describe()]


def cmd_table(args) -> tuple[list[Result], list[str]]:
    dmax, nmax = args.em
    rows = []
    for d in range(dmax + 1):
        A = em_space(d, args.p)
        rows.append([en_cardinality(A, n, args.p) for n in range(1, nmax + 1)])
    cells = [[format_exact(x) for x in row] for row in rows]
    width = max(len(str(c)) for row in cells for c in row) if cells and cells[0] else 1
    width = max(width, len(f"n={nmax}"))
    header = "d\\n " + " ".join(f"{f'n={n}':>{width}}" for n in range(1, nmax + 1))
    lines = [header] + [f"{d:<3} " + " ".join(f"{c:>{width}}" for c in row) for d, row in enumerate(cells)]
    record = {"quantity": "em_table", "p": args.p, "d": list(range(dmax + 1)), "n": list(range(1, nmax + 1)), "table": cells}
    return [record], lines


COMMANDS = {
    "card": cmd_card,
    "euler": cmd_euler,
    "hcard": cmd_hcard,
    "loop": cmd_loop,
    "table": cmd_table,
}


def _value_lines(results: list[Result]) -> list[str]:
    if len(results) == 1:
        return [str(format_exact(results[0].value))]
    return [f"n={r.n} {format_exact(r.value)}" for r in results]


def _emit(args, payload: dict[str, Any], lines: list[str], started: float, out) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command, **payload}
        if args.timing and not args.stable_output:
            doc["elapsed_us"] = int((time.perf_counter() - started) * 1e6)
        out.write(json.dumps(doc, sort_keys=False) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    started = time.perf_counter()
    try:
        with caps.overridden(order=args.order_cap, component=args.component_cap, work=args.work_cap, table=args.table_cap):
            return _dispatch(args, started, out)
    except LoopcardError as exc:
        if args.json:
            out.write(json.dumps({"schema": SCHEMA, "command": args.command, **exc.to_json()}) + "\n")
        err.write(f"loopcard: {type(exc).__name__}: {exc}\n")
        return exc.exit_code


def _dispatch(args, started: float, out) -> int:
    if args.command == "verify":
        reports = run_suites(args.suite)
        _emit(args, {"suites": [r.to_json() for r in reports]}, [r.line() for r in reports], started, out)
        return 0 if all(r.passed for r in reports) else 1
    results, lines = COMMANDS[args.command](args)
    records = [r.to_json() if isinstance(r, Result) else r for r in results]
    _emit(args, {"results": records}, lines, started, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
