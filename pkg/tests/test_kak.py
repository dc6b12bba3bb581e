import numpy as np
import pytest

from unopt import (
    CX_MATRIX,
    Circuit,
    Gate,
    ValidationError,
    full_unitary,
    haar_random_unitary,
    kak_decompose,
    u3_matrix,
    u3_params,
    weyl_coordinates,
)
from unopt.kak import canonical_gate, kak_decomposition, rx, ry, rz

from conftest import gates_unitary, max_phase_distance

SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


class TestU3:
    @pytest.mark.parametrize("seed", range(8))
    def test_params_roundtrip(self, seed):
        m = haar_random_unitary(2, np.random.default_rng(seed))
        rebuilt = u3_matrix(*u3_params(m))
        assert max_phase_distance(rebuilt, m) < 1e-12

    def test_diagonal(self):
        m = np.diag([1.0, np.exp(0.3j)])
        theta, phi, lam = u3_params(m)
        assert theta == 0.0 and phi + lam == pytest.approx(0.3)
        assert max_phase_distance(u3_matrix(theta, phi, lam), m) < 1e-12

    def test_near_diagonal_phase_stability(self, rng):
        """Phases of the large entries must not inherit noise from tiny ones."""
        for eps in (1e-12, 1e-9, 1e-6):
            c, s = np.cos(eps), np.sin(eps)
            m = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 2))) @ np.array(
                [[c, -s], [s, c]]
            )
            assert max_phase_distance(u3_matrix(*u3_params(m)), m) < 1e-12

    def test_antidiagonal(self):
        m = np.array([[0, 1], [1, 0]], dtype=complex)
        assert max_phase_distance(u3_matrix(*u3_params(m)), m) < 1e-12

    def test_matrix_definition(self):
        m = u3_matrix(0.3, 0.4, 0.5)
        assert m[0, 0] == pytest.approx(np.cos(0.15))
        assert m[0, 1] == pytest.approx(-np.exp(0.5j) * np.sin(0.15))
        assert m[1, 0] == pytest.approx(np.exp(0.4j) * np.sin(0.15))
        assert m[1, 1] == pytest.approx(np.exp(0.9j) * np.cos(0.15))


class TestDecomposition:
    def test_reconstruction_haar(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            u = haar_random_unitary(4, rng)
            d = kak_decomposition(u)
            assert np.max(np.abs(d.reconstruct() - u)) < 1e-9

    def test_chamber_constraints(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            x, y, z = kak_decomposition(haar_random_unitary(4, rng)).coordinates
            assert -1e-12 <= abs(z) <= y + 1e-12 <= x + 2e-12 <= np.pi / 4 + 2e-12

    @pytest.mark.parametrize(
        "u,coords",
        [
            (np.eye(4, dtype=complex), (0, 0, 0)),
            (CX_MATRIX, (np.pi / 4, 0, 0)),
            (SWAP, (np.pi / 4, np.pi / 4, np.pi / 4)),
        ],
    )
    def test_known_coordinates(self, u, coords):
        assert weyl_coordinates(u) == pytest.approx(coords, abs=1e-9)

    def test_rejects_non_unitary(self):
        with pytest.raises(ValidationError):
            kak_decompose(np.ones((4, 4), dtype=complex))


class TestKakDecompose:
    def _check(self, u, qubits=(0, 1), n=2, tol=1e-8):
        res = kak_decompose(u, qubits)
        target = full_unitary(Circuit(n, (Gate(qubits, u),)))
        got = gates_unitary(res.gates, n)
        assert max_phase_distance(got, target) < tol
        assert res.cx_count <= 3
        assert sum(1 for g in res.gates if g.label == "CX") == res.cx_count
        assert all(g.label in ("U3", "CX") for g in res.gates)
        for g in res.gates:
            if g.label == "U3":
                assert max_phase_distance(g.matrix, u3_matrix(*u3_params(g.matrix))) < 1e-12
        return res

    def test_identity(self):
        res = self._check(np.eye(4, dtype=complex))
        assert res.cx_count == 0

    def test_cx_itself(self):
        res = self._check(CX_MATRIX)
        assert res.cx_count == 1

    def test_swap_needs_three(self):
        res = self._check(SWAP)
        assert res.cx_count == 3

    def test_local_product_is_zero_cx(self, rng):
        u = np.kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng))
        assert self._check(u).cx_count == 0

    def test_two_cx_class(self):
        u = canonical_gate(0.3, 0.2, 0.0)
        assert self._check(u).cx_count == 2

    def test_haar_oracle_100(self):
        """Reconstruction residual < 1e-8 over 100 Haar samples; generic class is 3 CX."""
        rng = np.random.default_rng(42)
        counts = []
        for _ in range(100):
            res = self._check(haar_random_unitary(4, rng))
            counts.append(res.cx_count)
        assert all(c == 3 for c in counts)

    def test_arbitrary_qubit_pair(self, rng):
        u = haar_random_unitary(4, rng)
        self._check(u, qubits=(2, 0), n=3)

    def test_reversed_qubit_pair(self, rng):
        u = haar_random_unitary(4, rng)
        self._check(u, qubits=(1, 0), n=2)

    @pytest.mark.parametrize("eps", [0.0, 1e-12, 1e-9, 1e-7, 1e-5])
    def test_near_degenerate_classes(self, eps, rng):
        """Chamber-corner neighborhoods cluster the magic-product spectrum;
        the joint diagonalization must stay accurate through them."""
        for coords in [
            (np.pi / 4, np.pi / 4, np.pi / 4 - eps),
            (np.pi / 4, eps, 0.0),
            (eps, eps, eps),
        ]:
            u = canonical_gate(*coords)
            dressing = np.kron(haar_random_unitary(2, rng), haar_random_unitary(2, rng))
            self._check(dressing @ u, tol=1e-8)

    def test_controlled_phase_family(self):
        for lam in np.linspace(0.0, 2 * np.pi, 9):
            u = np.diag([1.0, 1.0, 1.0, np.exp(1j * lam)]).astype(complex)
            res = self._check(u)
            assert res.cx_count <= 2


def test_rotation_conventions():
    assert np.allclose(rz(np.pi), np.diag([-1j, 1j]))
    assert np.allclose(ry(np.pi), np.array([[0, -1], [1, 0]]))
    assert np.allclose(rx(np.pi), np.array([[0, -1j], [-1j, 0]]))


def test_canonical_gate_at_origin():
    assert np.allclose(canonical_gate(0, 0, 0), np.eye(4))
