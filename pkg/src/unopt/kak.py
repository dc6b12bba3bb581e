"""Two-qubit KAK decomposition into {U3, CX}.

The factorization runs through the magic (Bell) basis: a two-qubit unitary U
becomes U = g (a0 x a1) exp(i(x XX + y YY + z ZZ)) (b0 x b1) with interaction
coordinates (x, y, z) folded into the Weyl chamber
0 <= |z| <= y <= x <= pi/4 (z >= 0 when x = pi/4). The chamber point decides
the CX count (0, 1, 2 or 3) and each case has an exact closed-form circuit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .circuit import CX_MATRIX, Gate
from .errors import DecompositionError, DimensionError
from .linalg import require_unitary

WEYL_ATOL = 1e-9

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_PAULIS = (_X, _Y, _Z)

_MAGIC = np.array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]], dtype=complex
) / math.sqrt(2)
_MAGIC_DAG = _MAGIC.conj().T

# Rows recover (w, x, y, z) from the magic-basis eigenphases.
_COORD_FROM_PHASES = np.array(
    [[1, 1, 1, 1], [1, 1, -1, -1], [-1, 1, -1, 1], [1, -1, -1, 1]], dtype=float
) * 0.25

# Hermitian single-qubit involutions that exchange two Pauli axes (and negate
# the third); index (k1, k2) swaps axes k1 and k2 of the interaction vector.
_AXIS_SWAPPERS = {
    (0, 1): (_X + _Y) / math.sqrt(2),
    (0, 2): (_X + _Z) / math.sqrt(2),
    (1, 2): (_Y + _Z) / math.sqrt(2),
}


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array([[cmath.exp(-0.5j * theta), 0], [0, cmath.exp(0.5j * theta)]], dtype=complex)


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    """U3(theta, phi, lambda) in the standard parameterization."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


def u3_params(m: np.ndarray) -> tuple[float, float, float]:
    """Angles (theta, phi, lambda) with U3(...) equal to m up to global phase.

    Phase sums come from entry products (phi+lambda from m11 m00*, phi-lambda
    from -m10 m01*), so the phase noise of a near-zero entry only ever scales
    that entry's own tiny magnitude instead of leaking into the large ones.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise DimensionError("u3_params expects a 2x2 matrix")
    theta = 2.0 * math.atan2(abs(m[1, 0]), abs(m[0, 0]))
    s = cmath.phase(m[1, 1] * m[0, 0].conjugate()) if abs(m[1, 1] * m[0, 0]) > 0 else 0.0
    d = cmath.phase(-m[1, 0] * m[0, 1].conjugate()) if abs(m[1, 0] * m[0, 1]) > 0 else 0.0
    phi = (s + d) / 2.0
    lam = (s - d) / 2.0
    # anchor the dropped global phase on the dominant column entry and resolve
    # the joint pi ambiguity of (phi, lambda) against the other entry's sign
    if abs(m[0, 0]) >= abs(m[1, 0]):
        alpha = cmath.phase(m[0, 0])
        if abs(m[1, 0]) > 0 and math.cos(cmath.phase(m[1, 0]) - alpha - phi) < 0:
            phi += math.pi
            lam += math.pi
    else:
        alpha = cmath.phase(m[1, 0]) - phi
        if abs(m[0, 0]) > 0 and math.cos(cmath.phase(m[0, 0]) - alpha) < 0:
            phi += math.pi
            lam += math.pi
    return theta, phi, lam


def u3_gate(qubit: int, m: np.ndarray) -> Gate:
    """Wrap a single-qubit unitary as a U3-labeled gate (global phase dropped)."""
    params = u3_params(m)
    return Gate((qubit,), u3_matrix(*params), "U3", params)


def canonical_gate(x: float, y: float, z: float) -> np.ndarray:
    """exp(i (x XX + y YY + z ZZ)), computed from the commuting eigenstructure."""
    xx = np.kron(_X, _X)
    yy = np.kron(_Y, _Y)
    zz = np.kron(_Z, _Z)
    h = x * xx + y * yy + z * zz
    # XX, YY, ZZ commute; diagonalize in the magic basis where all three are diagonal
    d = np.diagonal(_MAGIC_DAG @ h @ _MAGIC).real
    return _MAGIC @ np.diag(np.exp(1j * d)) @ _MAGIC_DAG


def _diag_symmetric_unitary(g: np.ndarray, atol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Real orthogonal Q with Q^T g Q diagonal, for a symmetric unitary g.

    Re(g) and Im(g) are commuting real symmetric matrices. Jacobi joint
    diagonalization (Cardoso-Souloumiac Givens sweeps) stays accurate through
    eigenvalue clusters, unlike eigenbasis splitting, which divides by
    spectral gaps.
    """
    mats = [g.real.copy(), g.imag.copy()]
    n = g.shape[0]
    q = np.linalg.eigh(mats[0])[1]  # warm start from one factor's eigenbasis
    mats = [q.T @ m @ q for m in mats]

    for _ in range(24):
        off = max(
            float(np.max(np.abs(m - np.diag(np.diagonal(m))))) for m in mats
        )
        if off < 1e-14:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                # closed-form Givens angle minimizing both off-diagonals
                h = np.array([[m[i, i] - m[j, j], 2 * m[i, j]] for m in mats])
                gram = h.T @ h
                w, vecs = np.linalg.eigh(gram)
                x, y = vecs[:, np.argmax(w)]
                if x < 0:
                    x, y = -x, -y
                r = math.hypot(x, y)
                if r < 1e-18:
                    continue
                c = math.sqrt((x + r) / (2 * r))
                s = y / math.sqrt(2 * r * (x + r))
                rot = np.eye(n)
                rot[i, i] = rot[j, j] = c
                rot[i, j], rot[j, i] = -s, s
                q = q @ rot
                mats = [rot.T @ m @ rot for m in mats]

    lam = q.T @ g @ q
    if np.max(np.abs(lam - np.diag(np.diagonal(lam)))) > atol:
        raise DecompositionError("simultaneous diagonalization of the magic product failed")
    return q, np.diagonal(lam).copy()


def _kron_factor(m: np.ndarray) -> tuple[complex, np.ndarray, np.ndarray]:
    """Split m = g * kron(f1, f2) with unit-determinant 2x2 factors."""
    a, b = max(((i, j) for i in range(4) for j in range(4)), key=lambda t: abs(m[t]))
    f1 = np.zeros((2, 2), dtype=complex)
    f2 = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            f1[(a >> 1) ^ i, (b >> 1) ^ j] = m[a ^ (i << 1), b ^ (j << 1)]
            f2[(a & 1) ^ i, (b & 1) ^ j] = m[a ^ i, b ^ j]
    f1 /= np.sqrt(np.linalg.det(f1))
    f2 /= np.sqrt(np.linalg.det(f2))
    g = m[a, b] / (f1[a >> 1, b >> 1] * f2[a & 1, b & 1])
    if g.real < 0:
        f1 *= -1
        g = -g
    if not np.allclose(m, g * np.kron(f1, f2), atol=1e-8):
        raise DecompositionError("matrix is not a Kronecker product of 2x2 factors")
    return g, f1, f2


@dataclass(frozen=True)
class KakDecomposition:
    """U = phase * kron(a0, a1) @ canonical_gate(*coordinates) @ kron(b0, b1)."""

    phase: complex
    a0: np.ndarray
    a1: np.ndarray
    coordinates: tuple[float, float, float]
    b0: np.ndarray
    b1: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (
            self.phase
            * np.kron(self.a0, self.a1)
            @ canonical_gate(*self.coordinates)
            @ np.kron(self.b0, self.b1)
        )


def _kak_raw(u: np.ndarray) -> KakDecomposition:
    det = np.linalg.det(u)
    alpha0 = cmath.phase(det) / 4
    us = u * cmath.exp(-1j * alpha0)
    m = _MAGIC_DAG @ us @ _MAGIC
    q, lam = _diag_symmetric_unitary(m @ m.T)
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    theta = np.angle(lam) / 2
    r = np.exp(-1j * theta)[:, None] * (q.T @ m)
    if np.max(np.abs(r.imag)) > 1e-8:
        raise DecompositionError("magic-basis factor failed to come out real")
    r = r.real.copy()
    if np.linalg.det(r) < 0:
        theta[0] += math.pi
        r[0, :] *= -1
    gl, a0, a1 = _kron_factor(_MAGIC @ q @ _MAGIC_DAG)
    gr, b0, b1 = _kron_factor(_MAGIC @ r @ _MAGIC_DAG)
    w, x, y, z = _COORD_FROM_PHASES @ theta
    phase = cmath.exp(1j * (alpha0 + w)) * gl * gr
    return KakDecomposition(phase, a0, a1, (x, y, z), b0, b1)


def _canonicalize(d: KakDecomposition, atol: float = WEYL_ATOL) -> KakDecomposition:
    """Fold the interaction vector into the Weyl chamber, dressing the locals."""
    v = list(d.coordinates)
    a0, a1, b0, b1 = d.a0, d.a1, d.b0, d.b1
    phase = d.phase

    def shift(k: int, s: int) -> None:
        # exp(i pi/2 PP) = i (P x P): a half-turn of axis k is local
        nonlocal phase, b0, b1
        v[k] += s * math.pi / 2
        phase *= (1j) ** (-s % 4)
        if s % 2:
            p = _PAULIS[k]
            b0 = p @ b0
            b1 = p @ b1

    def negate(k1: int, k2: int) -> None:
        # conjugating by (P x I) on the remaining axis flips two coordinates
        nonlocal a0, b0
        v[k1] *= -1
        v[k2] *= -1
        p = _PAULIS[3 - k1 - k2]
        a0 = a0 @ p
        b0 = p @ b0

    def swap(k1: int, k2: int) -> None:
        nonlocal a0, a1, b0, b1
        v[k1], v[k2] = v[k2], v[k1]
        s = _AXIS_SWAPPERS[(min(k1, k2), max(k1, k2))]
        a0, a1 = a0 @ s, a1 @ s
        b0, b1 = s @ b0, s @ b1

    def canonical_shift(k: int) -> None:
        while v[k] <= -math.pi / 4:
            shift(k, 1)
        while v[k] > math.pi / 4:
            shift(k, -1)

    for k in range(3):
        canonical_shift(k)
    if abs(v[0]) < abs(v[1]):
        swap(0, 1)
    if abs(v[1]) < abs(v[2]):
        swap(1, 2)
    if abs(v[0]) < abs(v[1]):
        swap(0, 1)
    if v[0] < 0:
        negate(0, 2)
    if v[1] < 0:
        negate(1, 2)
    canonical_shift(2)
    if v[0] > math.pi / 4 - atol and v[2] < 0:
        shift(0, -1)
        negate(0, 2)
    return KakDecomposition(phase, a0, a1, (v[0], v[1], v[2]), b0, b1)


def kak_decomposition(u: np.ndarray) -> KakDecomposition:
    """Canonical KAK factorization of a 4x4 unitary."""
    u = require_unitary(u, "two-qubit unitary")
    if u.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 matrix, got {u.shape}")
    return _canonicalize(_kak_raw(u))


def weyl_coordinates(u: np.ndarray) -> tuple[float, float, float]:
    return kak_decomposition(u).coordinates


def cx_count_for(coordinates: tuple[float, float, float], atol: float = WEYL_ATOL) -> int:
    """Minimal CX count implied by canonical Weyl coordinates."""
    x, y, z = coordinates
    if x < atol and y < atol and abs(z) < atol:
        return 0
    if abs(x - math.pi / 4) < atol and y < atol and abs(z) < atol:
        return 1
    if abs(z) < atol:
        return 2
    return 3


@dataclass(frozen=True)
class KakResult:
    """{U3, CX} realization of a two-qubit unitary, up to global phase."""

    gates: tuple[Gate, ...]
    cx_count: int
    coordinates: tuple[float, float, float]


def _cx(c: int, t: int) -> Gate:
    return Gate((c, t), CX_MATRIX, "CX")


def kak_decompose(u: np.ndarray, qubits: tuple[int, int] = (0, 1)) -> KakResult:
    """Decompose a two-qubit unitary into U3 and CX gates on the given pair.

    Exact constructions per CX class (application order, q0/q1 = qubits):

    * 0: locals only.
    * 1: K(pi/4,0,0) = e^{-i pi/4} (H e^{i pi/4 Z} x e^{i pi/4 X}) CX (H x I).
    * 2: K(x,y,0) = (V x V) CX (Rx(-2x) x Rz(-2y)) CX (V† x V†), V = Rx(pi/2).
    * 3: K(x,y,z) = e^{i pi/4} (I x w†) T (w x I) with w = Rz(pi/2) and
      T = CX(q1,q0) (Rz(pi/2-2z) x Ry(pi/2-2x)) CX(q0,q1) (I x Ry(2y-pi/2)) CX(q1,q0).
    """
    d = kak_decomposition(u)
    x, y, z = d.coordinates
    q0, q1 = qubits
    n_cx = cx_count_for(d.coordinates)

    if n_cx == 0:
        gates = [u3_gate(q0, d.a0 @ d.b0), u3_gate(q1, d.a1 @ d.b1)]
    elif n_cx == 1:
        l0 = _H @ np.diag([cmath.exp(1j * math.pi / 4), cmath.exp(-1j * math.pi / 4)])
        l1 = rx(-math.pi / 2)  # e^{i pi/4 X}
        gates = [
            u3_gate(q0, _H @ d.b0),
            u3_gate(q1, d.b1),
            _cx(q0, q1),
            u3_gate(q0, d.a0 @ l0),
            u3_gate(q1, d.a1 @ l1),
        ]
    elif n_cx == 2:
        v = rx(math.pi / 2)
        vd = v.conj().T
        gates = [
            u3_gate(q0, vd @ d.b0),
            u3_gate(q1, vd @ d.b1),
            _cx(q0, q1),
            u3_gate(q0, rx(-2 * x)),
            u3_gate(q1, rz(-2 * y)),
            _cx(q0, q1),
            u3_gate(q0, d.a0 @ v),
            u3_gate(q1, d.a1 @ v),
        ]
    else:
        w = rz(math.pi / 2)
        gates = [
            u3_gate(q0, w @ d.b0),
            u3_gate(q1, d.b1),
            _cx(q1, q0),
            u3_gate(q1, ry(2 * y - math.pi / 2)),
            _cx(q0, q1),
            u3_gate(q0, rz(math.pi / 2 - 2 * z)),
            u3_gate(q1, ry(math.pi / 2 - 2 * x)),
            _cx(q1, q0),
            u3_gate(q0, d.a0),
            u3_gate(q1, d.a1 @ w.conj().T),
        ]
    return KakResult(tuple(gates), n_cx, d.coordinates)
