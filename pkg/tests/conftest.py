import numpy as np
import pytest

from unopt import Circuit, Gate, embed, full_unitary, haar_random_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def assert_unitary(m, atol=1e-10):
    d = m.shape[0]
    assert np.max(np.abs(m.conj().T @ m - np.eye(d))) <= atol


def max_phase_distance(a, b):
    """Smallest max-norm distance between a and any unit-phase multiple of b."""
    m = b.conj().T @ a
    idx = np.unravel_index(np.argmax(np.abs(m)), m.shape)
    phase = m[idx] / abs(m[idx])
    return np.max(np.abs(a - phase * b))


def gates_unitary(gates, n):
    """Dense operator of a plain gate list (application order)."""
    return full_unitary(Circuit(n, tuple(gates)))


def brute_force_depth(c: Circuit) -> int:
    """Longest chain in the conflict DAG, as an independent depth oracle."""
    best = 0
    longest = [0] * len(c.gates)
    for i, g in enumerate(c.gates):
        longest[i] = 1
        for j in range(i):
            if set(g.qubits) & set(c.gates[j].qubits):
                longest[i] = max(longest[i], longest[j] + 1)
        best = max(best, longest[i])
    return best


def random_gate(rng, qubits):
    return Gate(tuple(qubits), haar_random_unitary(2 ** len(qubits), rng))
