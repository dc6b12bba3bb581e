"""External-compiler harness for unoptimization benchmarks."""

from .depth import qasm_depth
from .runner import HarnessResult, optimize_file, run_manifest, write_results
from .toolchains import COMPILERS, PYTKET_PEEPHOLE, QISKIT_L3, resolve

__all__ = [
    "COMPILERS",
    "HarnessResult",
    "PYTKET_PEEPHOLE",
    "QISKIT_L3",
    "optimize_file",
    "qasm_depth",
    "resolve",
    "run_manifest",
    "write_results",
]

__version__ = "0.1.0"
