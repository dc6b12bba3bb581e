"""Manifest-driven batch runner.

Consumes the QASM files and manifest.json a bench run exports, runs each
requested compiler on every unoptimized circuit, and writes an append-only
results JSON shaped as:

    { record_id: { compiler: { "d_opt": int, "gate_count": int,
                               "wall_time": float, "versions": {...} } } }

Failures never abort the batch: missing files and compile crashes become
error entries and the run continues.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from .depth import qasm_depth
from .toolchains import Adapter, resolve


@dataclass(frozen=True)
class HarnessResult:
    record_id: str
    compiler: str
    d_opt: int
    gate_count: int
    wall_time: float
    versions: dict[str, str]

    def to_json(self) -> dict:
        return {
            "d_opt": self.d_opt,
            "gate_count": self.gate_count,
            "wall_time": self.wall_time,
            "versions": self.versions,
        }


def optimize_file(qasm_path: str | Path, compiler: str, record_id: str = "") -> HarnessResult:
    """Run one toolchain on one QASM file and measure the common-basis depth."""
    name, adapter = resolve(compiler)
    start = time.perf_counter()
    text, versions = adapter(str(qasm_path))
    wall = time.perf_counter() - start
    depth, count = qasm_depth(text)
    return HarnessResult(
        record_id=record_id or Path(qasm_path).stem,
        compiler=name,
        d_opt=depth,
        gate_count=count,
        wall_time=wall,
        versions=versions,
    )


def run_manifest(
    manifest_path: str | Path,
    compilers: list[str],
    out_json: str | Path | None = None,
    adapters: dict[str, Adapter] | None = None,
) -> tuple[list[HarnessResult], list[str]]:
    """Process every manifest record with every compiler.

    `adapters` overrides the toolchain registry (used by tests to inject a
    stand-in compiler). Returns the results plus a list of per-record errors.
    Input files are never modified; an existing results file is merged into,
    not overwritten.
    """
    manifest_path = Path(manifest_path)
    manifest = json.loads(manifest_path.read_text())
    base = manifest_path.parent

    resolved: list[tuple[str, Adapter]] = []
    for comp in compilers:
        if adapters is not None and comp in adapters:
            resolved.append((comp, adapters[comp]))
        else:
            resolved.append(resolve(comp))

    results: list[HarnessResult] = []
    errors: list[str] = []
    for record_id in sorted(manifest):
        entry = manifest[record_id]
        qasm = base / entry["unopt_qasm"]
        if not qasm.exists():
            errors.append(f"{record_id}: missing file {qasm.name}")
            continue
        for name, adapter in resolved:
            start = time.perf_counter()
            try:
                text, versions = adapter(str(qasm))
                depth, count = qasm_depth(text)
            except EnvironmentError:
                raise
            except Exception as exc:  # compile crash: record and continue
                errors.append(f"{record_id}/{name}: {exc}")
                continue
            results.append(
                HarnessResult(
                    record_id=record_id,
                    compiler=name,
                    d_opt=depth,
                    gate_count=count,
                    wall_time=time.perf_counter() - start,
                    versions=versions,
                )
            )

    if out_json is not None:
        write_results(results, out_json, errors)
    return results, errors


def write_results(
    results: list[HarnessResult], out_json: str | Path, errors: list[str] | None = None
) -> None:
    """Merge results into the output file; errors land in a sibling file so the
    results schema stays exactly {record_id: {compiler: row}}."""
    out_path = Path(out_json)
    payload: dict = {}
    if out_path.exists():
        payload = json.loads(out_path.read_text())
    for res in results:
        payload.setdefault(res.record_id, {})[res.compiler] = res.to_json()
    out_path.write_text(json.dumps(payload, indent=2, sort_keys=True))
    if errors:
        err_path = out_path.with_suffix(out_path.suffix + ".errors.json")
        existing = json.loads(err_path.read_text()) if err_path.exists() else []
        err_path.write_text(json.dumps(existing + errors, indent=2))
