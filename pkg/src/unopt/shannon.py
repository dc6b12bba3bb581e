"""Three-qubit decomposition via cosine-sine factorization and demultiplexing.

An 8x8 unitary splits on its most significant qubit into
u = (U1 (+) U2) CS(theta) (V1 (+) V2). Each block-diagonal factor demultiplexes
into two-qubit gates around a multiplexed Rz, and CS(theta) is a multiplexed
Ry; multiplexed rotations expand into CX and single-qubit rotations by angle
halving. Everything that comes out acts on at most two qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .circuit import CX_MATRIX, Gate
from .errors import DecompositionError, DimensionError
from .kak import ry, rz
from .linalg import require_unitary

CSD_ATOL = 1e-9


def cosine_sine_decompose(
    u: np.ndarray,
) -> tuple[tuple[np.ndarray, np.ndarray], np.ndarray, tuple[np.ndarray, np.ndarray]]:
    """Balanced CSD: u = (L1 (+) L2) @ [[C, -S], [S, C]] @ (R1 (+) R2).

    Angles are returned ascending in [0, pi/2]; the sort permutation is folded
    into the block factors so the reconstruction identity is preserved.
    """
    u = require_unitary(u, "cosine-sine input")
    dim = u.shape[0]
    if dim % 2 != 0:
        raise DimensionError(f"cosine-sine split needs even dimension, got {dim}")
    m = dim // 2
    (l1, l2), theta, (r1, r2) = scipy.linalg.cossin(u, p=m, q=m, separate=True)

    order = np.argsort(theta, kind="stable")
    theta = theta[order]
    l1, l2 = l1[:, order], l2[:, order]
    r1, r2 = r1[order, :], r2[order, :]

    c, s = np.diag(np.cos(theta)), np.diag(np.sin(theta))
    cs = np.block([[c, -s], [s, c]])
    rebuilt = scipy.linalg.block_diag(l1, l2) @ cs @ scipy.linalg.block_diag(r1, r2)
    if np.max(np.abs(rebuilt - u)) > CSD_ATOL:
        raise DecompositionError("cosine-sine factors lost orthogonality")
    return (l1, l2), theta, (r1, r2)


def demultiplex(m0: np.ndarray, m1: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split block_diag(m0, m1) = (I x v) (D (+) D†) (I x w), D = diag(dvals).

    m0 m1† is unitary, hence normal; its Schur form is diagonal and supplies
    both the eigenbasis v and the square-root phases.
    """
    prod = m0 @ m1.conj().T
    evals, v = scipy.linalg.schur(prod, output="complex")
    evals = np.diagonal(evals)
    dvals = np.exp(0.5j * np.angle(evals))
    w = np.diag(dvals) @ v.conj().T @ m1
    return v, dvals, w


def multiplexed_rotation_gates(
    rot: Callable[[float], np.ndarray],
    angles: list[float],
    controls: tuple[int, ...],
    target: int,
) -> list[Gate]:
    """Gate list applying rot(angles[j]) to `target` for control pattern j.

    controls[0] carries the most significant bit of the angle index. The
    halving recursion works because CX conjugation on the target flips the
    sign of every nested Ry/Rz angle.
    """
    if len(angles) != 2 ** len(controls):
        raise DimensionError("angle count must be 2^len(controls)")
    if not controls:
        return [Gate((target,), rot(angles[0]))]
    half = len(angles) // 2
    mu = [(a + b) / 2 for a, b in zip(angles[:half], angles[half:])]
    nu = [(a - b) / 2 for a, b in zip(angles[:half], angles[half:])]
    inner = controls[1:]
    cx = Gate((controls[0], target), CX_MATRIX, "CX")
    return (
        multiplexed_rotation_gates(rot, mu, inner, target)
        + [cx]
        + multiplexed_rotation_gates(rot, nu, inner, target)
        + [cx]
    )


@dataclass(frozen=True)
class ThreeQubitDecomposition:
    """Arity-<=2 gate realization of an 8x8 unitary, up to global phase."""

    gates: tuple[Gate, ...]
    gate_count: int


def _decompose_8x8(u: np.ndarray, qubits: tuple[int, int, int]) -> list[Gate]:
    t0, t1, t2 = qubits
    lowers = (t1, t2)
    (u1, u2), theta, (v1, v2) = cosine_sine_decompose(u)

    def demux_gates(m0: np.ndarray, m1: np.ndarray) -> list[Gate]:
        v, dvals, w = demultiplex(m0, m1)
        out = [Gate(lowers, w)]
        out += multiplexed_rotation_gates(rz, list(-2 * np.angle(dvals)), lowers, t0)
        out.append(Gate(lowers, v))
        return out

    gates = demux_gates(v1, v2)
    gates += multiplexed_rotation_gates(ry, list(2 * theta), lowers, t0)
    gates += demux_gates(u1, u2)
    return gates


def decompose_three_qubit(
    u: np.ndarray, qubits: tuple[int, int, int] = (0, 1, 2)
) -> ThreeQubitDecomposition:
    """Decompose an 8x8 unitary into gates of arity <= 2 on the given triple.

    qubits[0] is the most significant bit of u's index. On numerical failure
    the input is re-expressed in a deterministically randomized lower-qubit
    basis and retried before giving up.
    """
    u = require_unitary(u, "three-qubit unitary")
    if u.shape != (8, 8):
        raise DimensionError(f"expected an 8x8 matrix, got {u.shape}")

    try:
        gates = _decompose_8x8(u, qubits)
    except DecompositionError:
        gates = _decompose_with_randomized_basis(u, qubits)
    return ThreeQubitDecomposition(tuple(gates), len(gates))


def _decompose_with_randomized_basis(
    u: np.ndarray, qubits: tuple[int, int, int]
) -> list[Gate]:
    from .linalg import haar_random_unitary

    rng = np.random.default_rng(780439122)
    last_error: Exception | None = None
    for _ in range(2):
        wl = haar_random_unitary(4, rng)
        wr = haar_random_unitary(4, rng)
        # (I x wl) u (I x wr) keeps the top-qubit block split intact
        shifted = np.kron(np.eye(2), wl) @ u @ np.kron(np.eye(2), wr)
        try:
            inner = _decompose_8x8(shifted, qubits)
        except DecompositionError as exc:  # degenerate again; re-randomize
            last_error = exc
            continue
        lowers = (qubits[1], qubits[2])
        return [Gate(lowers, wr.conj().T)] + inner + [Gate(lowers, wl.conj().T)]
    raise DecompositionError("three-qubit decomposition failed after basis retries") from last_error
