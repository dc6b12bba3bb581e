"""Depth-ratio metrics, the benchmark runner, and harness-result merging.

A benchmark run generates (u, v) pairs per qubit count, measures depths in the
{U3, CX} basis (d_original, d_unopt) and after three-qubit merging
(d3_original, d3_unopt), exports both circuits as QASM for external compiler
harnesses, and writes CSV/JSON summaries. d_opt arrives later from a harness
results file and fills in the optimized ratio.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from .basis import to_u3cx_basis
from .circuit import Circuit, depth, random_circuit
from .errors import UnoptError, ValidationError
from .qasm import export_qasm
from .recipe import PairSelection, unoptimize
from .simulate import fidelity_exact
from .synthesis import merged_depth3

FIDELITY_CHECK_MAX_QUBITS = 10


@dataclass(frozen=True)
class BenchRecord:
    n: int
    sample: int
    seed: int
    method: str
    k: int
    d_original: int
    d_unopt: int
    d3_original: int
    d3_unopt: int
    r_unopt: float
    r3_unopt: float
    compiler: str | None = None
    d_opt: int | None = None
    r_opt: float | None = None

    @property
    def record_id(self) -> str:
        return f"n{self.n}_s{self.sample}"


def compute_metrics(
    u: Circuit,
    v: Circuit,
    *,
    sample: int = 0,
    seed: int = 0,
    method: str = PairSelection.RANDOM.value,
    k: int = 0,
    u_basis: Circuit | None = None,
    v_basis: Circuit | None = None,
) -> BenchRecord:
    """Depth metrics for an original/unoptimized pair (d_opt left absent).

    d_original/d_unopt are measured after {U3, CX} conversion; the d3 values
    are measured on the raw two-qubit circuits before conversion.
    """
    if not u.gates or not v.gates:
        raise ValidationError("metrics are undefined for empty circuits")
    d_original = depth(u_basis if u_basis is not None else to_u3cx_basis(u))
    d_unopt = depth(v_basis if v_basis is not None else to_u3cx_basis(v))
    d3_original = merged_depth3(u)
    d3_unopt = merged_depth3(v)
    return BenchRecord(
        n=u.n_qubits,
        sample=sample,
        seed=seed,
        method=method,
        k=k,
        d_original=d_original,
        d_unopt=d_unopt,
        d3_original=d3_original,
        d3_unopt=d3_unopt,
        r_unopt=d_unopt / d_original,
        r3_unopt=d3_unopt / d3_original,
    )


def sample_rng(base_seed: int, n: int, sample: int) -> tuple[np.random.Generator, int]:
    """Deterministic per-sample stream; the derived seed goes in the record."""
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(n, sample))
    derived = int(ss.generate_state(1, dtype=np.uint64)[0])
    return np.random.default_rng(ss), derived


def _circuit_with_pairs(n: int, rng: np.random.Generator, attempts: int = 16) -> Circuit:
    """Random circuit that admits at least one ER pair.

    At small n a draw can place every gate on one qubit pair, leaving nothing
    to unoptimize; such circuits are resampled (deterministically, same stream).
    """
    from .recipe import find_pairs

    for _ in range(attempts):
        u = random_circuit(n, n, rng)
        if find_pairs(u):
            return u
    raise UnoptError(f"could not draw a circuit with a usable pair at n={n}")


def run_benchmark(
    n_range: list[int],
    samples: int,
    method: PairSelection,
    base_seed: int,
    out_dir: str | Path | None = None,
    verify_fraction: float = 1.0,
) -> list[BenchRecord]:
    """Generate circuits, unoptimize with k = n^2, measure, export QASM pairs."""
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    out_path = Path(out_dir) if out_dir is not None else None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)

    records: list[BenchRecord] = []
    manifest: dict[str, dict] = {}
    for n in n_range:
        for i in range(samples):
            rng, derived_seed = sample_rng(base_seed, n, i)
            u = _circuit_with_pairs(n, rng)
            v, recipe = unoptimize(u, method, None, rng)
            if n <= FIDELITY_CHECK_MAX_QUBITS and rng.random() < verify_fraction:
                f = fidelity_exact(u, v)
                if f < 1.0 - 1e-9:
                    raise UnoptError(
                        f"equivalence check failed at n={n} sample={i}: F={f!r}"
                    )
            u_basis = to_u3cx_basis(u)
            v_basis = to_u3cx_basis(v)
            rec = compute_metrics(
                u,
                v,
                sample=i,
                seed=derived_seed,
                method=method.value,
                k=len(recipe.steps),
                u_basis=u_basis,
                v_basis=v_basis,
            )
            records.append(rec)
            if out_path is not None:
                orig = out_path / f"{n}_{i}_orig.qasm"
                unopt = out_path / f"{n}_{i}_unopt.qasm"
                export_qasm(u_basis, orig)
                export_qasm(v_basis, unopt)
                manifest[rec.record_id] = {
                    "n": n,
                    "sample": i,
                    "seed": derived_seed,
                    "method": method.value,
                    "k": rec.k,
                    "d_original": rec.d_original,
                    "d_unopt": rec.d_unopt,
                    "original_qasm": orig.name,
                    "unopt_qasm": unopt.name,
                }
    if out_path is not None:
        (out_path / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
        write_csv(records, out_path / "records.csv")
        (out_path / "summary.json").write_text(json.dumps(summarize(records), indent=2, sort_keys=True))
    return records


_CSV_FIELDS = [
    "n", "sample", "seed", "method", "k",
    "d_original", "d_unopt", "d3_original", "d3_unopt",
    "r_unopt", "r3_unopt", "compiler", "d_opt", "r_opt",
]


def write_csv(records: list[BenchRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS)
        writer.writeheader()
        for rec in records:
            row = {key: asdict(rec)[key] for key in _CSV_FIELDS}
            row = {k: ("" if v is None else v) for k, v in row.items()}
            writer.writerow(row)


def read_csv(path: str | Path) -> list[BenchRecord]:
    records = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            records.append(
                BenchRecord(
                    n=int(row["n"]),
                    sample=int(row["sample"]),
                    seed=int(row["seed"]),
                    method=row["method"],
                    k=int(row["k"]),
                    d_original=int(row["d_original"]),
                    d_unopt=int(row["d_unopt"]),
                    d3_original=int(row["d3_original"]),
                    d3_unopt=int(row["d3_unopt"]),
                    r_unopt=float(row["r_unopt"]),
                    r3_unopt=float(row["r3_unopt"]),
                    compiler=row["compiler"] or None,
                    d_opt=int(row["d_opt"]) if row["d_opt"] else None,
                    r_opt=float(row["r_opt"]) if row["r_opt"] else None,
                )
            )
    return records


def summarize(records: list[BenchRecord]) -> dict:
    """Per-(n, method, compiler) mean and standard deviation of the ratios."""
    groups: dict[tuple, list[BenchRecord]] = {}
    for rec in records:
        groups.setdefault((rec.n, rec.method, rec.compiler), []).append(rec)

    def stats(values: list[float]) -> dict:
        return {
            "mean": statistics.fmean(values),
            "std": statistics.pstdev(values),
            "count": len(values),
        }

    out = []
    for (n, method, compiler), recs in sorted(groups.items(), key=lambda t: (t[0][0], t[0][1], t[0][2] or "")):
        entry = {
            "n": n,
            "method": method,
            "compiler": compiler,
            "r_unopt": stats([r.r_unopt for r in recs]),
            "r3_unopt": stats([r.r3_unopt for r in recs]),
        }
        with_opt = [r.r_opt for r in recs if r.r_opt is not None]
        if with_opt:
            entry["r_opt"] = stats(with_opt)
        out.append(entry)
    return {"groups": out}


def merge_harness_results(
    records: list[BenchRecord], harness: dict
) -> tuple[list[BenchRecord], list[str]]:
    """Fill d_opt/r_opt from a harness results dict keyed by record id.

    Expected shape: {record_id: {compiler: {"d_opt": int, ...}}}. Each record
    expands into one output record per compiler; records without harness
    entries pass through unchanged and produce a warning.
    """
    merged: list[BenchRecord] = []
    warnings: list[str] = []
    for rec in records:
        entry = harness.get(rec.record_id)
        if not entry:
            warnings.append(f"{rec.record_id}: no harness result")
            merged.append(rec)
            continue
        for compiler in sorted(entry):
            result = entry[compiler]
            try:
                d_opt = int(result["d_opt"])
            except (KeyError, TypeError, ValueError):
                warnings.append(f"{rec.record_id}/{compiler}: malformed d_opt")
                continue
            merged.append(
                replace(rec, compiler=compiler, d_opt=d_opt, r_opt=d_opt / rec.d_original)
            )
    return merged, warnings
