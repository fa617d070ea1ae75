"""Command line: ``confsuper verify <suite>``, ``confsuper run <scenario.json>``, ``confsuper --list``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .runner import run_scenario, run_suite
from .scenario import ConfigurationError, load_scenario
from .suites import SUITES, suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="confsuper", description="Exact verification of conformal superintegrability identities.")
    p.add_argument("--list", action="store_true", help="list builtin suites and their checks")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    common.add_argument("--report", type=Path, help="write the report to this path")
    common.add_argument("--format", choices=("json", "text"), default="text", help="report format (default text)")
    common.add_argument("--stable", action="store_true", help="record elapsed_ms as 0 for byte-identical reports")
    sub = p.add_subparsers(dest="command")
    v = sub.add_parser("verify", parents=[common], help="run a builtin suite")
    v.add_argument("suite", help="suite name, or 'all'")
    r = sub.add_parser("run", parents=[common], help="run a JSON scenario file")
    r.add_argument("scenario", type=Path)
    return p


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _list() -> str:
    lines = []
    for name in SUITES:
        lines.append(name)
        for c in sorted(suite(name), key=lambda c: c.name):
            lines.append(f"  {c.name}  [{c.anchor}]")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    if args.list:
        sys.stdout.write(_list())
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    if args.seed < 0 or args.seed >= 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "verify":
            names = list(SUITES) if args.suite == "all" else [args.suite]
            reports = [run_suite(n, args.seed, args.stable) for n in names]
        else:
            reports = [run_scenario(load_scenario(args.scenario), args.seed, args.stable)]
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.format == "json":
        # one suite gives one report object; 'all' gives an array of them
        bodies = [r.to_json().rstrip("\n") for r in reports]
        text = bodies[0] + "\n" if len(bodies) == 1 else "[\n" + ",\n".join(bodies) + "\n]\n"
    else:
        text = "".join(r.to_text() for r in reports)
    if args.report is not None:
        try:
            args.report.write_text(text)
        except OSError as exc:
            print(f"configuration error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    sys.stdout.write(text)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
