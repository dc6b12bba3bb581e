"""Compiler adapters.

Each adapter takes a QASM path, runs one external toolchain at its strongest
optimization setting, re-expresses the result in the {U3, CX} set with a
conversion-only pass, and returns (qasm_text, versions). Import failures
surface as EnvironmentError with a remediation hint; anything after import is
a compile failure the runner records per record.
"""

from __future__ import annotations

from typing import Callable

Adapter = Callable[[str], tuple[str, dict[str, str]]]

QISKIT_L3 = "qiskit-transpile-L3"
PYTKET_PEEPHOLE = "pytket-fullpeephole"


def _require_qiskit():
    try:
        import qiskit
        from qiskit import transpile
    except ImportError as exc:
        raise EnvironmentError(
            "qiskit is not installed; install the harness extras with "
            "`pip install 'unopt-harness[qiskit]'` (or `pip install qiskit`)"
        ) from exc
    return qiskit, transpile


def _to_u3cx_qasm(circuit) -> str:
    """Conversion-only pass into the common {U3, CX} measurement basis."""
    import qiskit
    from qiskit import transpile

    converted = transpile(circuit, basis_gates=["u3", "cx"], optimization_level=0)
    try:
        from qiskit import qasm2

        return qasm2.dumps(converted)
    except ImportError:  # qiskit < 1.0 keeps qasm() on the circuit
        return converted.qasm()


def run_qiskit(qasm_path: str) -> tuple[str, dict[str, str]]:
    qiskit, transpile = _require_qiskit()
    from qiskit import QuantumCircuit

    circuit = QuantumCircuit.from_qasm_file(qasm_path)
    optimized = transpile(circuit, optimization_level=3)
    return _to_u3cx_qasm(optimized), {"qiskit": qiskit.__version__}


def run_pytket(qasm_path: str) -> tuple[str, dict[str, str]]:
    try:
        import pytket
        from pytket.passes import FullPeepholeOptimise
        from pytket.qasm import circuit_from_qasm, circuit_to_qasm_str
    except ImportError as exc:
        raise EnvironmentError(
            "pytket is not installed; install the harness extras with "
            "`pip install 'unopt-harness[pytket]'` (or `pip install pytket`)"
        ) from exc
    qiskit, _ = _require_qiskit()  # final conversion runs through qiskit
    from qiskit import QuantumCircuit

    circuit = circuit_from_qasm(qasm_path)
    FullPeepholeOptimise().apply(circuit)
    back = QuantumCircuit.from_qasm_str(circuit_to_qasm_str(circuit))
    versions = {"pytket": pytket.__version__, "qiskit": qiskit.__version__}
    return _to_u3cx_qasm(back), versions


COMPILERS: dict[str, Adapter] = {
    QISKIT_L3: run_qiskit,
    PYTKET_PEEPHOLE: run_pytket,
    # short aliases used on the command line
    "qiskit": run_qiskit,
    "pytket": run_pytket,
}

CANONICAL_NAMES = {
    "qiskit": QISKIT_L3,
    "pytket": PYTKET_PEEPHOLE,
    QISKIT_L3: QISKIT_L3,
    PYTKET_PEEPHOLE: PYTKET_PEEPHOLE,
}


def resolve(name: str) -> tuple[str, Adapter]:
    if name not in COMPILERS:
        raise KeyError(f"unknown compiler {name!r}; known: {sorted(set(CANONICAL_NAMES))}")
    return CANONICAL_NAMES[name], COMPILERS[name]
