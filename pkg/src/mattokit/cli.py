"""Command line front end: ``verify``, ``sweep`` and ``demo``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import (
    SWEEP_PARAMS,
    Scenario,
    ScenarioError,
    demo_scalar,
    load_scenario,
    rows_to_csv,
    run_scenario,
    sweep,
)
from .inner import STRATEGIES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _window(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an unsigned 64-bit integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed {value} is outside the unsigned 64-bit range")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mattokit", description="Verify truncated Toeplitz identities on model spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the identity-check catalogue on one scenario")
    v.add_argument("--scenario", type=Path, help="scenario file (key = value lines)")
    v.add_argument("--seed", type=_seed)
    v.add_argument("--dim", type=int)
    v.add_argument("--window", type=_window)
    v.add_argument("--strategy", choices=STRATEGIES)
    v.add_argument("--tol", type=float)
    v.add_argument("--checks", help="comma-separated check ids or groups (default: all)")
    v.add_argument("--report", choices=("text", "json"), default="text")
    v.add_argument("--out", type=Path, help="write the report here instead of stdout")

    s = sub.add_parser("sweep", help="tabulate defects over a parameter grid (CSV)")
    s.add_argument("--scenario", type=Path)
    s.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    s.add_argument("--grid", required=True, help="comma-separated values")
    s.add_argument("--out", type=Path, help="CSV path (default: stdout)")

    d = sub.add_parser("demo", help="scalar model space z^n with explicit matrices")
    d.add_argument("--scalar-degree", type=int, default=3)
    return p


def _scenario_from(args) -> Scenario:
    s = load_scenario(args.scenario) if args.scenario else Scenario()
    overrides = {}
    for attr, key in (("seed", "seed"), ("dim", "d"), ("window", "N"), ("strategy", "strategy"), ("tol", "tol")):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "checks", None):
        overrides["checks"] = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    return s.with_(**overrides) if overrides else s


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n")


def cmd_verify(args) -> int:
    report = run_scenario(_scenario_from(args))
    _emit(report.to_json() if args.report == "json" else report.to_text(), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    grid = [g.strip() for g in args.grid.split(",") if g.strip()]
    if not grid:
        raise ScenarioError("empty grid")
    try:
        values = [float(g) for g in grid]
    except ValueError:
        raise ScenarioError(f"grid values must be numbers, got {args.grid!r}") from None
    rows = sweep(_scenario_from(args), args.param, values)
    _emit(rows_to_csv(rows), args.out)
    return EXIT_OK


def cmd_demo(args) -> int:
    report = demo_scalar(args.scalar_degree)
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"verify": cmd_verify, "sweep": cmd_sweep, "demo": cmd_demo}[args.command]
    try:
        return handler(args)
    except ScenarioError as exc:
        print(f"mattokit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
