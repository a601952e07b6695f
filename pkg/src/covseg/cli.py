"""Command line front end.

Usage::

    covseg lambda SESSION [--name M1] [--format table|json|csv] [--out FILE]
    covseg derive SESSION --k 2 [--tag Z|L]
    covseg enumerate --max-size 6 --covers "KP:n<=4,a in -1..1" --check bv,lambda
    covseg selftest

Exit codes: 0 success, 1 usage or parse error, 2 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Callable, Sequence

from . import __version__
from .covers import CoverSpec
from .derivatives import (
    is_generic,
    lambda_of,
    multisegment_derivative,
    derivative,
    semi_whittaker_nonzero,
    wh_dim_L,
    wh_dim_multisegment,
    wh_dim_Z,
)
from .dsl import Session, parse
from .errors import CovsegError
from .langlands import bv_consistency, wavefront
from .partitions import Composition
from .segments import Multisegment
from .sweep import CHECKS, CSV_COLUMNS, SweepConfig, parse_covers, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

SESSION_COMMANDS = ("lambda", "wf", "generic", "whdim", "derive", "bvcheck", "semiwh")


class UsageError(Exception):
    pass


class Report:
    """Rows plus a renderer for each output format."""

    def __init__(self, command: str, rows: list[dict[str, Any]], columns: Sequence[str],
                 table: Callable[[dict[str, Any]], str], header: dict[str, Any] | None = None,
                 failed: bool = False) -> None:
        self.command = command
        self.rows = rows
        self.columns = columns
        self.table = table
        self.header = header or {}
        self.failed = failed

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"command": self.command, **self.header, "results": self.rows}
            return json.dumps(doc, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=list(self.columns), lineterminator="\n",
                                    extrasaction="ignore")
            writer.writeheader()
            for row in self.rows:
                writer.writerow({k: _csv_cell(row.get(k)) for k in self.columns})
            return buf.getvalue()
        return "".join(self.table(row) + "\n" for row in self.rows)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, list):
        return "(" + ",".join(map(str, value)) + ")"
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _paren(parts: Sequence[int]) -> str:
    return "(" + ",".join(map(str, parts)) + ")"


# -- session commands -----------------------------------------------------------

def _selected(session: Session, names: Sequence[str] | None) -> list[tuple[str, Multisegment]]:
    if not names:
        return list(session.multisegments.items())
    missing = [n for n in names if n not in session.multisegments]
    if missing:
        raise UsageError(f"unknown multisegment name(s): {', '.join(missing)}")
    return [(n, session.multisegments[n]) for n in names]


def cmd_lambda(session: Session, items, args) -> Report:
    c = session.cover
    rows = [{"name": n, "multisegment": str(m), "lambda": lambda_of(m, c).to_json()} for n, m in items]
    return Report("lambda", rows, ("name", "multisegment", "lambda"),
                  lambda r: f"{r['name']}  lambda={_paren(r['lambda'])}")


def cmd_wf(session: Session, items, args) -> Report:
    c = session.cover
    rows = [{"name": n, "multisegment": str(m), "wf": wavefront(m, c).to_json()} for n, m in items]
    return Report("wf", rows, ("name", "multisegment", "wf"),
                  lambda r: f"{r['name']}  WF={_paren(r['wf'])}")


def cmd_generic(session: Session, items, args) -> Report:
    c = session.cover
    rows = [
        {"name": n, "multisegment": str(m), "generic": is_generic(m, c), "lambda": lambda_of(m, c).to_json()}
        for n, m in items
    ]
    return Report("generic", rows, ("name", "multisegment", "generic", "lambda"),
                  lambda r: f"{r['name']}  generic={str(r['generic']).lower()}")


def cmd_whdim(session: Session, items, args) -> Report:
    c = session.cover
    rows = []
    for n, m in items:
        wh = wh_dim_multisegment(m, c)
        rows.append({
            "name": n,
            "multisegment": str(m),
            "whdimZ": "unknown" if wh is None else wh,
            "segments": [{"segment": str(d), "Z": wh_dim_Z(d, c), "L": wh_dim_L(d, c)} for d in m],
        })

    def table(r):
        segs = "  ".join(f"{s['segment']}: Z={s['Z']} L={s['L']}" for s in r["segments"])
        return f"{r['name']}  whdimZ={r['whdimZ']}  {segs}"

    return Report("whdim", rows, ("name", "multisegment", "whdimZ"), table)


def cmd_derive(session: Session, items, args) -> Report:
    if args.k is None:
        raise UsageError("derive requires --k")
    c = session.cover
    rows = []
    for n, m in items:
        if args.tag == "L":
            if len(m) != 1:
                raise UsageError(f"L-derivatives are only available for single segments ({n} has {len(m)})")
            res = derivative(m.segments[0], args.k, c, "L")
        else:
            res = multisegment_derivative(m, args.k, c)
        rows.append({"name": n, "multisegment": str(m), **res.to_json(), "value": str(res)})
    return Report("derive", rows, ("name", "multisegment", "degree", "scalar", "tag", "value"),
                  lambda r: f"{r['name']}  {r['tag']}^({r['degree']}) = {r['value']}")


def cmd_bvcheck(session: Session, items, args) -> Report:
    c = session.cover
    rows = []
    failed = False
    for n, m in items:
        res = bv_consistency(m, c)
        failed |= not res.equal and not res.conjectural
        rows.append({"name": n, "multisegment": str(m), **res.to_json()})

    def table(r):
        line = (f"{r['name']}  lambda={_paren(r['lambda'])}  bv={_paren(r['bv'])}  "
                f"orbit={_paren(r['orbit'])}  equal={str(r['equal']).lower()}")
        return line + ("  [conjectural]" if "status" in r else "")

    return Report("bvcheck", rows, ("name", "multisegment", "lambda", "bv", "equal", "orbit"), table,
                  failed=failed)


def cmd_semiwh(session: Session, items, args) -> Report:
    if not args.composition:
        raise UsageError("semiwh requires --composition, e.g. --composition 2,1")
    try:
        lam = Composition(tuple(int(x) for x in args.composition.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad composition {args.composition!r}: {exc}") from None
    c = session.cover
    rows = []
    for n, m in items:
        if len(m) != 1:
            raise UsageError(f"semiwh applies to single segments ({n} has {len(m)})")
        rows.append({"name": n, "multisegment": str(m), "composition": list(lam.parts),
                     "nonzero": semi_whittaker_nonzero(m.segments[0], lam, c)})
    return Report("semiwh", rows, ("name", "multisegment", "composition", "nonzero"),
                  lambda r: f"{r['name']}  {_paren(r['composition'])}-semi-Whittaker "
                            f"{'nonzero' if r['nonzero'] else 'zero'}")


COMMANDS = {
    "lambda": cmd_lambda,
    "wf": cmd_wf,
    "generic": cmd_generic,
    "whdim": cmd_whdim,
    "derive": cmd_derive,
    "bvcheck": cmd_bvcheck,
    "semiwh": cmd_semiwh,
}


def run(session: Session, command: str, args: argparse.Namespace) -> Report:
    """Execute one session command and return its report."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    report = COMMANDS[command](session, _selected(session, getattr(args, "name", None)), args)
    report.header = {"cover": session.cover.to_json()}
    return report


# -- sweep commands -------------------------------------------------------------

def _parse_checks(text: str) -> tuple[str, ...]:
    checks = tuple(filter(None, (c.strip() for c in text.split(","))))
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    return checks


def cmd_enumerate(args: argparse.Namespace) -> Report:
    try:
        covers = parse_covers(args.covers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    checks = _parse_checks(args.check)
    cfg = SweepConfig(max_size=args.max_size, max_r0=args.max_r0, offsets=args.offsets,
                      checks=checks, collect_rows=args.format == "csv")
    res = run_sweep(covers, cfg)
    summary = res.to_json(checks)
    if args.format == "csv":
        return Report("enumerate", res.rows, CSV_COLUMNS, lambda r: "", failed=not res.ok)
    header = {"covers": [c.to_json() for c in covers], "max_size": args.max_size,
              "max_r0": args.max_r0, "offsets": args.offsets, "summary": summary}
    rows = [{"check": name, **summary["checks"][name]} for name in checks]

    report = Report("enumerate", rows, ("check", "checked", "failures"),
                    lambda r: f"{r['check']:<12} checked={r['checked']:<8} failures={r['failures']}",
                    header=header, failed=not res.ok)
    base_render = report.render

    def render(fmt: str) -> str:
        if fmt != "table":
            return base_render(fmt)
        lines = [f"covers={len(covers)} instances={res.instances}", base_render("table").rstrip("\n")]
        lines += [f"FAIL {f['check']} {json.dumps(f['cover'], sort_keys=True)} {f['multisegment']}: {f['reason']}"
                  for f in res.failures]
        lines.append("OK" if res.ok else "FAILED")
        return "\n".join(lines) + "\n"

    report.render = render
    return report


def cmd_selftest(args: argparse.Namespace) -> Report:
    from .selftest import run_selftest

    results = run_selftest(max_size=args.max_size)
    return Report("selftest", results, ("criterion", "passed", "detail"),
                  lambda r: f"[{'PASS' if r['passed'] else 'FAIL'}] {r['criterion']}: {r['detail']}",
                  failed=not all(r["passed"] for r in results))


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covseg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        p.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")

    for name in SESSION_COMMANDS:
        p = sub.add_parser(name, help=f"{name} for the multisegments of a session file")
        p.add_argument("session", help="session file in the covseg text format, or - for stdin")
        p.add_argument("--name", action="append", help="restrict to this multisegment (repeatable)")
        common(p)
        if name == "derive":
            p.add_argument("--k", type=int, help="derivative degree")
            p.add_argument("--tag", choices=("Z", "L"), default="Z")
        if name == "semiwh":
            p.add_argument("--composition", help="comma-separated composition, e.g. 2,1")

    p = sub.add_parser("enumerate", help="exhaustive sweep with identity checks")
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--covers", default="KP:n<=4,a in -1..1;S:n<=4")
    p.add_argument("--check", default=",".join(CHECKS), help=f"comma list from {','.join(CHECKS)}")
    p.add_argument("--max-r0", type=int, default=3)
    p.add_argument("--offsets", type=int, default=1, help="segments start at twists 0..offsets-1")
    common(p)

    p = sub.add_parser("selftest", help="run the built-in verification suite")
    p.add_argument("--max-size", type=int, default=8)
    common(p)
    return parser


def _read_session(path: str) -> Session:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "enumerate":
            report = cmd_enumerate(args)
        elif args.command == "selftest":
            report = cmd_selftest(args)
        else:
            report = run(_read_session(args.session), args.command, args)
        text = report.render(args.format)
    except (UsageError, CovsegError, ValueError, OSError) as exc:
        print(f"covseg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_VERIFY if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
