"""Dense complex-matrix substrate: Haar sampling, phase-insensitive equality, serialization.

All unitaries in this package are plain complex ndarrays. The conventions that
matter live in `circuit` (qubit ordering) and `kak` (magic basis); this module
is ordering-agnostic.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ValidationError

UNITARY_ATOL = 1e-10
PHASE_EQ_ATOL = 1e-8


def is_unitary(m: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    """True when ||M†M - I||_max <= atol."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    d = m.shape[0]
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(d))) <= atol)


def require_unitary(m: np.ndarray, what: str = "matrix", atol: float = UNITARY_ATOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if not is_unitary(m, atol):
        raise ValidationError(f"{what} is not unitary within {atol:g}")
    return m


def haar_random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Sample a Haar-distributed unitary of the given dimension.

    QR of a complex Ginibre matrix, with the R diagonal's phases folded back
    into Q so the distribution is exactly Haar rather than QR-biased.
    """
    if dim not in (2, 4, 8):
        raise DimensionError(f"unsupported Haar dimension {dim}; expected 2, 4 or 8")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def global_phase_between(a: np.ndarray, b: np.ndarray) -> complex:
    """Phase factor e^{i phi} maximizing agreement of a with e^{i phi} b.

    Read off the largest-magnitude entry of b†a; for a = e^{i phi} b that
    product is e^{i phi} I and the diagonal dominates.
    """
    m = b.conj().T @ a
    idx = np.unravel_index(np.argmax(np.abs(m)), m.shape)
    val = m[idx]
    if abs(val) == 0.0:
        return 1.0 + 0.0j
    return val / abs(val)


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = PHASE_EQ_ATOL) -> bool:
    """True iff some unit scalar phase makes a and b entrywise equal within tol."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    phase = global_phase_between(a, b)
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def matrix_to_json(m: np.ndarray) -> list[list[list[float]]]:
    """Row-major nested lists of [re, im] pairs."""
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(data: list[list[list[float]]]) -> np.ndarray:
    rows = [[complex(re, im) for re, im in row] for row in data]
    m = np.array(rows, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError("serialized matrix is not square")
    return m
