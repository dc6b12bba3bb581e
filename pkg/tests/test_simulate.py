import numpy as np
import pytest

from unopt import (
    Circuit,
    DimensionError,
    Gate,
    PairSelection,
    ValidationError,
    Verdict,
    decide_equivalence,
    fidelity_exact,
    fidelity_sampled,
    full_unitary,
    haar_random_unitary,
    random_circuit,
    simulate,
    unoptimize,
)
from unopt.simulate import default_shots, zero_state

from conftest import random_gate

X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class TestSimulate:
    def test_empty_circuit(self):
        out = simulate(Circuit(3))
        assert np.allclose(out, zero_state(3))

    def test_x_on_qubit1(self):
        out = simulate(Circuit(2, (Gate((1,), X),)))
        assert np.argmax(np.abs(out)) == 2

    def test_norm_preserved(self, rng):
        out = simulate(random_circuit(5, 5, rng))
        assert abs(np.vdot(out, out).real - 1) < 1e-9

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_matches_dense_oracle(self, n, rng):
        c = random_circuit(n, n, rng)
        dense = full_unitary(c) @ zero_state(n)
        assert np.max(np.abs(simulate(c) - dense)) < 1e-10

    def test_rejects_unnormalized_input(self, rng):
        state = np.ones(4, dtype=complex)
        with pytest.raises(ValidationError):
            simulate(Circuit(2), state)


class TestFidelityExact:
    def test_self_fidelity(self, rng):
        c = random_circuit(4, 4, rng)
        assert fidelity_exact(c, c) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        u = Circuit(2)
        v = Circuit(2, (Gate((0,), X),))
        assert fidelity_exact(u, v) == pytest.approx(0.0, abs=1e-12)

    def test_symmetry(self, rng):
        u, v = random_circuit(3, 3, rng), random_circuit(3, 3, rng)
        assert fidelity_exact(u, v) == pytest.approx(fidelity_exact(v, u), abs=1e-12)

    def test_qubit_count_mismatch(self, rng):
        with pytest.raises(DimensionError):
            fidelity_exact(random_circuit(2, 2, rng), random_circuit(3, 3, rng))

    def test_invariant_under_unoptimize(self, rng):
        u = random_circuit(4, 4, rng)
        v = random_circuit(4, 4, rng)
        v2, _ = unoptimize(v, PairSelection.RANDOM, 4, rng)
        assert fidelity_exact(u, v) == pytest.approx(fidelity_exact(u, v2), abs=1e-8)

    def test_haar_mean_decay(self):
        """Mean fidelity against independent random circuits is 1/2^n (Haar oracle)."""
        rng = np.random.default_rng(77)
        n, samples = 4, 120
        u = random_circuit(n, n, rng)
        values = [fidelity_exact(u, random_circuit(n, n, rng)) for _ in range(samples)]
        mean = np.mean(values)
        stderr = np.std(values) / np.sqrt(samples)
        assert abs(mean - 2 ** -n) < 4 * stderr + 1e-3


class TestFidelitySampled:
    def test_identical_circuits(self, rng):
        c = random_circuit(3, 3, rng)
        estimate, stderr = fidelity_sampled(c, c, 1000, rng)
        assert estimate == 1.0 and stderr == 0.0

    def test_orthogonal_pair(self, rng):
        u = Circuit(2)
        v = Circuit(2, (Gate((0,), X),))
        estimate, _ = fidelity_sampled(u, v, 1000, rng)
        assert estimate == 0.0

    def test_half_fidelity_calibration(self):
        """u empty, v = H on qubit 0: F = |<0|H|0>|^2 = 1/2 exactly."""
        rng = np.random.default_rng(5)
        u = Circuit(2)
        v = Circuit(2, (Gate((0,), H),))
        assert fidelity_exact(u, v) == pytest.approx(0.5, abs=1e-12)
        estimate, stderr = fidelity_sampled(u, v, 100_000, rng)
        assert abs(estimate - 0.5) < 5 * stderr

    def test_rejects_zero_shots(self, rng):
        c = random_circuit(2, 2, rng)
        with pytest.raises(ValidationError):
            fidelity_sampled(c, c, 0, rng)


class TestDecider:
    def test_yes_on_unoptimized(self, rng):
        u = random_circuit(4, 4, rng)
        v, _ = unoptimize(u, PairSelection.RANDOM, 4, rng)
        verdict = decide_equivalence(u, v, 0.1, "exact")
        assert verdict.verdict is Verdict.YES

    def test_no_on_extra_x(self, rng):
        u = random_circuit(4, 4, rng)
        v = u.appended(Gate((0,), X))
        verdict = decide_equivalence(u, v, 0.1, "exact")
        assert verdict.verdict is Verdict.NO

    def test_no_on_orthogonal(self):
        u = Circuit(2)
        v = Circuit(2, (Gate((0,), X),))
        verdict = decide_equivalence(u, v, 0.1, "exact")
        assert verdict.verdict is Verdict.NO
        assert verdict.fidelity_estimate < 1e-12

    def test_indeterminate_in_gap(self):
        # engineered F = 1 - 1.5*gap: Ry rotation with cos^2(t/2) = 0.85
        gap = 0.1
        theta = 2 * np.arccos(np.sqrt(1 - 1.5 * gap))
        ry = np.array(
            [[np.cos(theta / 2), -np.sin(theta / 2)], [np.sin(theta / 2), np.cos(theta / 2)]],
            dtype=complex,
        )
        u = Circuit(2)
        v = Circuit(2, (Gate((0,), ry),))
        verdict = decide_equivalence(u, v, gap, "exact")
        assert verdict.verdict is Verdict.INDETERMINATE

    def test_sampled_mode(self, rng):
        u = random_circuit(4, 4, rng)
        v, _ = unoptimize(u, PairSelection.RANDOM, 4, rng)
        verdict = decide_equivalence(u, v, 0.05, "sampled", rng=rng)
        assert verdict.verdict is Verdict.YES
        assert verdict.shots == default_shots(0.05) == 6400

    def test_invalid_gap(self, rng):
        c = random_circuit(2, 2, rng)
        with pytest.raises(ValidationError):
            decide_equivalence(c, c, 0.7, "exact")
