"""Conversion of arity-<=2 circuits into the {U3, CX} gate set."""

from __future__ import annotations

import numpy as np

from .circuit import CX_MATRIX, Circuit, Gate
from .errors import ValidationError
from .kak import kak_decompose, u3_gate
from .linalg import equal_up_to_global_phase


def _is_cx(g: Gate) -> bool:
    return g.arity == 2 and equal_up_to_global_phase(g.matrix, CX_MATRIX, 1e-10)


def to_u3cx_basis(c: Circuit) -> Circuit:
    """Re-express every gate as U3 or CX; adjacent singles on a wire fuse into one U3.

    Pure conversion: no optimization beyond the single-qubit fusion. Exact CX
    gates (up to phase) pass through; other two-qubit gates go through KAK.
    """
    converted: list[Gate] = []
    for g in c.gates:
        if g.arity == 3:
            raise ValidationError("three-qubit gate in to_u3cx_basis input; decompose first")
        if g.arity == 1:
            converted.append(g)
        elif _is_cx(g):
            converted.append(Gate(g.qubits, CX_MATRIX, "CX"))
        else:
            converted.extend(kak_decompose(g.matrix, g.qubits).gates)

    # fuse runs of single-qubit gates per wire, flushing right before each CX
    pending: dict[int, np.ndarray] = {}
    out: list[Gate] = []

    def flush(q: int) -> None:
        m = pending.pop(q, None)
        if m is None:
            return
        if equal_up_to_global_phase(m, np.eye(2), 1e-12):
            return
        out.append(u3_gate(q, m))

    for g in converted:
        if g.arity == 1:
            q = g.qubits[0]
            pending[q] = g.matrix @ pending[q] if q in pending else g.matrix
        else:
            for q in g.qubits:
                flush(q)
            out.append(g)
    for q in sorted(pending):
        flush(q)
    return Circuit(c.n_qubits, tuple(out))
