"""Command-line front end: ``umbilic-scan analyze ...``.

Exit status: 0 when every enabled check and catalog expectation passes, 1 on
a failed check or expectation, 2 on configuration or chart errors.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import catalog
from .errors import UmbilicError
from .pipeline import MODES, RunConfig, run
from .report import to_csv, to_json


def _grid(text: str) -> tuple[int, int]:
    try:
        n, m = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 16x32, got {text!r}") from None
    return n, m


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="umbilic-scan",
                                description="Classify umbilical-type points of spacelike surfaces.")
    sub = p.add_subparsers(dest="command")
    a = sub.add_parser("analyze", help="sample a surface and report classification and residuals")
    a.add_argument("--spacetime", help="catalog spacetime token, e.g. schwarzschild:M=1")
    a.add_argument("--surface", help="surface token, e.g. sphere:r=2")
    a.add_argument("--grid", type=_grid, default=(8, 8), help="cells per parameter, NxM")
    a.add_argument("--mode", choices=MODES, default="full")
    a.add_argument("--gauge", type=float, default=0.0, help="constant boost parameter beta")
    a.add_argument("--tol-cls", type=float, default=None)
    a.add_argument("--tol-ver", type=float, default=None)
    a.add_argument("--fd-step", type=float, default=None,
                   help="switch to finite-difference derivatives with this metric step")
    a.add_argument("--out", default=None, help="write the report here instead of stdout")
    a.add_argument("--format", choices=("json", "csv"), default="json")
    a.add_argument("--seed", type=int, default=0, help="seed for the random gauge boosts")
    a.add_argument("--list-catalog", action="store_true", help="list spacetimes and surfaces")
    return p


def list_catalog() -> str:
    lines = []
    for entry in catalog():
        params = ",".join(f"{k}={v}" for k, v in entry.defaults.items())
        lines.append(f"{entry.name}{':' + params if params else ''}  # {entry.note}")
        for name, fam in entry.surfaces.items():
            sp = ",".join(f"{k}={v}" for k, v in fam.defaults.items())
            lines.append(f"  {name}{':' + sp if sp else ''}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command != "analyze":
        parser.print_help(sys.stderr)
        return 2
    if args.list_catalog:
        sys.stdout.write(list_catalog())
        return 0
    if not args.spacetime or not args.surface:
        print("error: --spacetime and --surface are required", file=sys.stderr)
        return 2
    try:
        config = RunConfig(args.spacetime, args.surface, args.grid, args.mode, args.gauge,
                           args.tol_cls, args.tol_ver, args.fd_step, args.seed)
        report = run(config)
    except UmbilicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = to_json(report) if args.format == "json" else to_csv(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["summary"]["passed"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
