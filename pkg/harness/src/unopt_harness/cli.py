"""Harness command line: `harness run --manifest M --compilers qiskit,pytket --out R.json`."""

from __future__ import annotations

import argparse
import sys


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harness", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run compilers over a bench manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--compilers", default="qiskit,pytket",
                   help="comma-separated: qiskit, pytket (or canonical names)")
    p.add_argument("--out", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    from .runner import run_manifest

    compilers = [c.strip() for c in args.compilers.split(",") if c.strip()]
    try:
        results, errors = run_manifest(args.manifest, compilers, args.out)
    except EnvironmentError as exc:
        print(f"environment error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for err in errors:
        print(f"warning: {err}", file=sys.stderr)
    print(f"wrote {args.out}: {len(results)} rows, {len(errors)} errors")
    return 0


if __name__ == "__main__":
    sys.exit(main())
