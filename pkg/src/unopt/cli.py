"""Command-line interface.

Exit codes: 0 success, 1 verify said No (or could not say Yes), 2 usage error,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .basis import to_u3cx_basis
from .bench import merge_harness_results, read_csv, run_benchmark, summarize, write_csv
from .circuit import Circuit, depth, random_circuit
from .errors import UnoptError
from .qasm import export_qasm, import_qasm
from .recipe import PairSelection, Recipe, unoptimize, verify_recipe_witness
from .simulate import Verdict, decide_equivalence
from .synthesis import merged_depth3

_METHODS = {"random": PairSelection.RANDOM, "concat": PairSelection.CONCATENATED}


def _load_circuit(path: str) -> Circuit:
    p = Path(path)
    if p.suffix == ".qasm":
        return import_qasm(p)
    return Circuit.from_json(json.loads(p.read_text()))


def _save_circuit(c: Circuit, path: str) -> None:
    p = Path(path)
    if p.suffix == ".qasm":
        export_qasm(to_u3cx_basis(c), p)
    else:
        p.write_text(json.dumps(c.to_json()))


def _cmd_generate(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    c = random_circuit(args.n_qubits, args.depth, rng)
    _save_circuit(c, args.out)
    print(f"wrote {args.out}: n={c.n_qubits} gates={len(c.gates)} depth={depth(c)}")
    return 0


def _cmd_unoptimize(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    u = _load_circuit(args.circuit)
    v, recipe = unoptimize(u, _METHODS[args.method], args.k, rng)
    _save_circuit(v, args.out)
    if args.recipe_out:
        Path(args.recipe_out).write_text(json.dumps(recipe.to_json()))
    print(
        f"unoptimized: k={len(recipe.steps)} gates {len(u.gates)} -> {len(v.gates)}, "
        f"depth {depth(u)} -> {depth(v)}"
    )
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    u = _load_circuit(args.original)
    v = _load_circuit(args.candidate)
    if args.recipe:
        recipe = Recipe.from_json(json.loads(Path(args.recipe).read_text()))
        result = verify_recipe_witness(u, v, recipe)
        print(f"witness: {'ok' if result.ok else 'FAIL'}"
              + (f" ({result.reason})" if result.reason else ""))
        return 0 if result.ok else 1
    rng = np.random.default_rng(args.seed)
    verdict = decide_equivalence(u, v, args.gap_eps, args.mode, args.shots, rng)
    print(f"verdict: {verdict.verdict.value} (estimate {verdict.fidelity_estimate:.6f}"
          + (f", shots {verdict.shots}" if verdict.shots else "") + ")")
    return 0 if verdict.verdict is Verdict.YES else 1


def _cmd_convert(args: argparse.Namespace) -> int:
    c = to_u3cx_basis(_load_circuit(args.circuit))
    export_qasm(c, args.out)
    print(f"wrote {args.out}: gates={len(c.gates)} depth={depth(c)}")
    return 0


def _cmd_merge3(args: argparse.Namespace) -> int:
    c = _load_circuit(args.circuit)
    print(merged_depth3(c))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    n_range = list(range(args.n_min, args.n_max + 1))
    records = run_benchmark(
        n_range, args.samples, _METHODS[args.method], args.seed, args.out
    )
    for group in summarize(records)["groups"]:
        print(
            f"n={group['n']} method={group['method']} "
            f"r_unopt={group['r_unopt']['mean']:.3f}±{group['r_unopt']['std']:.3f} "
            f"r3_unopt={group['r3_unopt']['mean']:.3f}±{group['r3_unopt']['std']:.3f}"
        )
    return 0


def _cmd_merge_results(args: argparse.Namespace) -> int:
    records = read_csv(Path(args.records))
    harness = json.loads(Path(args.harness).read_text())
    merged, warnings = merge_harness_results(records, harness)
    write_csv(merged, args.out)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"wrote {args.out}: {len(merged)} rows, {len(warnings)} warnings")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unopt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="random two-qubit circuit -> JSON/QASM")
    p.add_argument("n_qubits", type=int)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("unoptimize", help="apply the elementary recipe k times")
    p.add_argument("circuit")
    p.add_argument("--method", choices=sorted(_METHODS), default="random")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--recipe-out", default=None)
    p.set_defaults(func=_cmd_unoptimize)

    p = sub.add_parser("verify", help="equivalence verdict or recipe witness check")
    p.add_argument("original")
    p.add_argument("candidate")
    p.add_argument("--recipe", default=None)
    p.add_argument("--gap-eps", type=float, default=0.05)
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("convert", help="convert to {U3, CX} QASM")
    p.add_argument("circuit")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("merge3", help="depth after three-qubit greedy merging")
    p.add_argument("circuit")
    p.set_defaults(func=_cmd_merge3)

    p = sub.add_parser("bench", help="full benchmark run with QASM export")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=11)
    p.add_argument("--samples", type=int, default=30)
    p.add_argument("--method", choices=sorted(_METHODS), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("merge-results", help="fill d_opt/r_opt from harness JSON")
    p.add_argument("records", help="records.csv from a bench run")
    p.add_argument("--harness", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_merge_results)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnoptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
