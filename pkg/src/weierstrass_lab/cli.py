"""Command line entry point: ``weierstrass-lab run <job-file>``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .groebner import precision_cap
from .jobs import JobError, load_job
from .report import run_job


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weierstrass-lab", description="Weierstrass cycles and flat limits on plane curves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="execute a job file and print a report")
    run.add_argument("job", help="path to a TOML job file")
    run.add_argument("--json", metavar="OUT", help="also write the machine-readable report to OUT ('-' for stdout)")
    run.add_argument("--precision-cap", type=int, default=None, metavar="N", help="cap for local truncation orders (default 64)")
    run.add_argument("--verbose", action="store_true", help="show timings and canonical ideal generators")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_job(args.job)
    except JobError as exc:
        for err in exc.errors:
            print(f"{args.job}: {err}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{args.job}: {exc.strerror}", file=sys.stderr)
        return 2
    if args.precision_cap is not None and args.precision_cap < 1:
        print("--precision-cap must be positive", file=sys.stderr)
        return 2

    if args.precision_cap is None:
        report = run_job(spec)
    else:
        with precision_cap(args.precision_cap):
            report = run_job(spec)

    if args.json == "-":
        sys.stdout.write(report.render_json())
    else:
        sys.stdout.write(report.render_text(verbose=args.verbose))
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(report.render_json())
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
