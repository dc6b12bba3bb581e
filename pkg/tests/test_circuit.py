import json

import numpy as np
import pytest

from unopt import (
    CX_MATRIX,
    Circuit,
    Gate,
    ResourceError,
    ValidationError,
    depth,
    embed,
    full_unitary,
    haar_random_unitary,
    random_circuit,
)

from conftest import assert_unitary, brute_force_depth, max_phase_distance, random_gate

X = np.array([[0, 1], [1, 0]], dtype=complex)


class TestGate:
    def test_rejects_duplicate_qubits(self, rng):
        with pytest.raises(ValidationError):
            Gate((0, 0), haar_random_unitary(4, rng))

    def test_rejects_non_unitary(self):
        with pytest.raises(ValidationError):
            Gate((0,), np.array([[1, 1], [0, 1]], dtype=complex))

    def test_rejects_shape_mismatch(self, rng):
        with pytest.raises(Exception):
            Gate((0, 1), haar_random_unitary(2, rng))

    def test_adjoint(self, rng):
        g = random_gate(rng, (0, 1))
        assert np.allclose(g.adjoint().matrix @ g.matrix, np.eye(4), atol=1e-12)

    def test_json_roundtrip(self, rng):
        g = Gate((2, 0), haar_random_unitary(4, rng), "blob")
        back = Gate.from_json(json.loads(json.dumps(g.to_json())))
        assert back.qubits == g.qubits and back.label == g.label
        assert np.array_equal(back.matrix, g.matrix)


class TestDepth:
    def test_empty(self):
        assert depth(Circuit(3)) == 0

    def test_disjoint_supports(self, rng):
        c = Circuit(4, (random_gate(rng, (0, 1)), random_gate(rng, (2, 3))))
        assert depth(c) == 1

    def test_chain_on_one_qubit(self, rng):
        gates = tuple(random_gate(rng, (0, q)) for q in (1, 2, 3, 1, 2))
        assert depth(Circuit(4, gates)) == 5

    def test_counts_single_qubit_gates(self, rng):
        c = Circuit(2, (random_gate(rng, (0,)), random_gate(rng, (0, 1))))
        assert depth(c) == 2

    def test_matches_brute_force_oracle(self, rng):
        for _ in range(20):
            c = random_circuit(5, 6, rng)
            assert depth(c) == brute_force_depth(c)

    def test_invariant_under_commuting_swap(self, rng):
        g1, g2 = random_gate(rng, (0, 1)), random_gate(rng, (2, 3))
        tail = (random_gate(rng, (1, 2)),)
        assert depth(Circuit(4, (g1, g2) + tail)) == depth(Circuit(4, (g2, g1) + tail))


class TestEmbed:
    def test_x_on_qubit0_little_endian(self):
        e = embed(Gate((0,), X), 2)
        v = np.zeros(4)
        v[0] = 1
        assert np.argmax(np.abs(e @ v)) == 1

    def test_identity_block(self):
        assert np.allclose(embed(Gate((1, 2), np.eye(4, dtype=complex)), 3), np.eye(8))

    def test_local_index_convention(self, rng):
        # embed on (0,1) for n=2 is the bit-reversal conjugation of the raw matrix
        g = haar_random_unitary(4, rng)
        perm = np.zeros((4, 4))
        for b in range(4):
            perm[b, (b & 1) * 2 + (b >> 1)] = 1
        assert np.allclose(embed(Gate((0, 1), g), 2), perm @ g @ perm.T)

    def test_preserves_unitarity(self, rng):
        assert_unitary(embed(random_gate(rng, (1, 3)), 5), 1e-9)

    def test_disjoint_supports_commute(self, rng):
        a = embed(random_gate(rng, (0, 1)), 4)
        b = embed(random_gate(rng, (2, 3)), 4)
        assert np.allclose(a @ b, b @ a, atol=1e-10)

    def test_out_of_range(self, rng):
        with pytest.raises(ValidationError):
            embed(random_gate(rng, (0, 5)), 3)


class TestFullUnitary:
    def test_empty(self):
        assert np.allclose(full_unitary(Circuit(3)), np.eye(8))

    def test_single_gate_spanning_register(self, rng):
        g = random_gate(rng, (0, 1, 2))
        assert np.allclose(full_unitary(Circuit(3, (g,))), embed(g, 3))

    def test_inverse_circuit_gives_identity(self, rng):
        c = random_circuit(4, 5, rng)
        inv = Circuit(4, tuple(g.adjoint() for g in reversed(c.gates)))
        total = Circuit(4, c.gates + inv.gates)
        assert np.max(np.abs(full_unitary(total) - np.eye(16))) < 1e-9

    def test_concat_is_composition(self, rng):
        c1, c2 = random_circuit(3, 3, rng), random_circuit(3, 3, rng)
        whole = Circuit(3, c1.gates + c2.gates)
        assert (
            max_phase_distance(full_unitary(whole), full_unitary(c2) @ full_unitary(c1))
            < 1e-9
        )

    def test_matches_embedded_product(self, rng):
        c = random_circuit(3, 4, rng)
        product = np.eye(8, dtype=complex)
        for g in c.gates:
            product = embed(g, 3) @ product
        assert np.max(np.abs(full_unitary(c) - product)) < 1e-10

    def test_resource_guard(self):
        with pytest.raises(ResourceError):
            full_unitary(Circuit(13), max_qubits=12)


class TestRandomCircuit:
    def test_two_qubits_forced_pair(self, rng):
        c = random_circuit(2, 3, rng)
        assert len(c.gates) == 3 and all(set(g.qubits) == {0, 1} for g in c.gates)
        assert depth(c) == 3

    def test_deterministic(self):
        a = random_circuit(4, 4, np.random.default_rng(1))
        b = random_circuit(4, 4, np.random.default_rng(1))
        assert len(a.gates) == len(b.gates)
        assert all(
            g.qubits == h.qubits and np.array_equal(g.matrix, h.matrix)
            for g, h in zip(a.gates, b.gates)
        )

    def test_depth_exact_and_two_qubit(self, rng):
        c = random_circuit(6, 6, rng)
        assert depth(c) == 6
        assert all(g.arity == 2 for g in c.gates)
        assert brute_force_depth(c) == 6

    def test_default_depth_is_n(self, rng):
        assert depth(random_circuit(5, rng=rng)) == 5

    def test_rejects_single_qubit(self, rng):
        with pytest.raises(ValidationError):
            random_circuit(1, 1, rng)


def test_circuit_json_roundtrip(rng):
    c = random_circuit(4, 4, rng)
    back = Circuit.from_json(json.loads(json.dumps(c.to_json())))
    assert back.n_qubits == c.n_qubits and len(back.gates) == len(c.gates)
    for g, h in zip(c.gates, back.gates):
        assert g.qubits == h.qubits
        assert np.array_equal(g.matrix, h.matrix)


def test_circuit_rejects_out_of_range_gate(rng):
    with pytest.raises(ValidationError):
        Circuit(2, (random_gate(rng, (1, 2)),))
