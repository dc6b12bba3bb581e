"""Gate/circuit data model, depth, and dense embedding oracles.

Index conventions, used everywhere in the package:

* Global basis states are little-endian: bit k of a basis index is the state
  of qubit k.
* A gate on ordered qubits (t0, ..., t_{m-1}) stores its matrix with t0 as the
  *most significant* bit of the local index. A CX gate on (control, target) is
  therefore the textbook matrix [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]].
* Circuit gates apply left to right to states, so the circuit's operator is
  E(g_last) @ ... @ E(g_first).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DimensionError, ResourceError, ValidationError
from .linalg import is_unitary, matrix_from_json, matrix_to_json

FULL_UNITARY_MAX_QUBITS = 12

CX_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


@dataclass(frozen=True)
class Gate:
    """A unitary on 1-3 ordered qubits.

    `params` carries the (theta, phi, lambda) angles for U3-labeled gates so
    QASM emission reproduces parsed text byte for byte.
    """

    qubits: tuple[int, ...]
    matrix: np.ndarray
    label: str | None = None
    params: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if not 1 <= len(qubits) <= 3:
            raise ValidationError(f"gate arity {len(qubits)} not in 1..3")
        if len(set(qubits)) != len(qubits):
            raise ValidationError(f"gate qubits {qubits} not distinct")
        if any(q < 0 for q in qubits):
            raise ValidationError(f"negative qubit index in {qubits}")
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2 ** len(qubits),) * 2:
            raise DimensionError(
                f"matrix shape {m.shape} does not match arity {len(qubits)}"
            )
        if not is_unitary(m):
            raise ValidationError("gate matrix is not unitary within 1e-10")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.params is not None:
            object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @property
    def arity(self) -> int:
        return len(self.qubits)

    def adjoint(self) -> "Gate":
        label = self.label if self.label == "CX" else None
        return Gate(self.qubits, self.matrix.conj().T, label)

    def to_json(self) -> dict:
        out = {
            "qubits": list(self.qubits),
            "label": self.label,
            "matrix": matrix_to_json(self.matrix),
        }
        if self.params is not None:
            out["params"] = list(self.params)
        return out

    @staticmethod
    def from_json(data: dict) -> "Gate":
        params = tuple(data["params"]) if data.get("params") is not None else None
        return Gate(
            tuple(data["qubits"]), matrix_from_json(data["matrix"]), data.get("label"), params
        )


@dataclass(frozen=True)
class Circuit:
    """An ordered gate sequence on a fixed qubit register."""

    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValidationError("circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ValidationError(
                    f"gate on {g.qubits} exceeds qubit count {self.n_qubits}"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def appended(self, *gates: Gate) -> "Circuit":
        return replace(self, gates=self.gates + tuple(gates))

    def to_json(self) -> dict:
        return {
            "format": "unopt-circuit-v1",
            "n_qubits": self.n_qubits,
            "gates": [g.to_json() for g in self.gates],
        }

    @staticmethod
    def from_json(data: dict) -> "Circuit":
        if data.get("format") != "unopt-circuit-v1":
            raise ValidationError(f"unknown circuit format {data.get('format')!r}")
        return Circuit(int(data["n_qubits"]), tuple(Gate.from_json(g) for g in data["gates"]))


def depth(c: Circuit) -> int:
    """Longest chain of gates conflicting on shared qubits (all arities count)."""
    frontier = [0] * c.n_qubits
    best = 0
    for g in c.gates:
        layer = 1 + max(frontier[q] for q in g.qubits)
        for q in g.qubits:
            frontier[q] = layer
        best = max(best, layer)
    return best


def apply_gate_matrix(mat: np.ndarray, qubits: tuple[int, ...], target: np.ndarray, n: int) -> np.ndarray:
    """Apply `mat` on `qubits` to the row index of `target` (vector or matrix)."""
    m = len(qubits)
    tail = target.shape[1:]
    full = target.reshape((2,) * n + tail)
    g = np.asarray(mat, dtype=complex).reshape((2,) * (2 * m))
    axes = [n - 1 - q for q in qubits]
    out = np.tensordot(g, full, axes=(list(range(m, 2 * m)), axes))
    out = np.moveaxis(out, list(range(m)), axes)
    return np.ascontiguousarray(out.reshape(target.shape))


def embed(g: Gate, n_qubits: int) -> np.ndarray:
    """Dense 2^n x 2^n operator acting as g on its qubits and identity elsewhere."""
    if max(g.qubits) >= n_qubits:
        raise ValidationError(f"gate on {g.qubits} does not fit in {n_qubits} qubits")
    if n_qubits > FULL_UNITARY_MAX_QUBITS:
        raise ResourceError(f"dense embedding capped at {FULL_UNITARY_MAX_QUBITS} qubits")
    eye = np.eye(2 ** n_qubits, dtype=complex)
    return apply_gate_matrix(g.matrix, g.qubits, eye, n_qubits)


def full_unitary(c: Circuit, max_qubits: int = FULL_UNITARY_MAX_QUBITS) -> np.ndarray:
    """Dense operator of the whole circuit, E(g_last) @ ... @ E(g_first)."""
    if c.n_qubits > max_qubits:
        raise ResourceError(
            f"full_unitary on {c.n_qubits} qubits exceeds the {max_qubits}-qubit guard"
        )
    u = np.eye(2 ** c.n_qubits, dtype=complex)
    for g in c.gates:
        u = apply_gate_matrix(g.matrix, g.qubits, u, c.n_qubits)
    return u


def random_circuit(n_qubits: int, target_depth: int | None = None, rng: np.random.Generator | None = None) -> Circuit:
    """Haar-random two-qubit gates on random pairs until the depth is exact.

    Gates keep being appended; one that would overshoot the target depth is
    rejected and resampled. Generation stops when no pair fits anymore (fewer
    than two wires below the target), which fills layers densely and leaves
    the depth exactly at the target.
    """
    from .linalg import haar_random_unitary

    if n_qubits < 2:
        raise ValidationError("random_circuit needs at least 2 qubits")
    if rng is None:
        rng = np.random.default_rng()
    if target_depth is None:
        target_depth = n_qubits
    if target_depth < 1:
        raise ValidationError("target_depth must be >= 1")

    frontier = [0] * n_qubits
    gates: list[Gate] = []
    while sum(1 for f in frontier if f < target_depth) >= 2:
        a = int(rng.integers(n_qubits))
        b = int(rng.integers(n_qubits - 1))
        if b >= a:
            b += 1
        if 1 + max(frontier[a], frontier[b]) > target_depth:
            continue
        gates.append(Gate((a, b), haar_random_unitary(4, rng)))
        layer = 1 + max(frontier[a], frontier[b])
        frontier[a] = frontier[b] = layer
    return Circuit(n_qubits, tuple(gates))
