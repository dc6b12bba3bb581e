"""Exact statevector simulation, fidelity, and the promised equivalence decider."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .circuit import Circuit, apply_gate_matrix
from .errors import DimensionError, ResourceError, ValidationError

SIMULATE_MAX_QUBITS = 24


def zero_state(n_qubits: int) -> np.ndarray:
    amps = np.zeros(2 ** n_qubits, dtype=complex)
    amps[0] = 1.0
    return amps


def simulate(c: Circuit, state: np.ndarray | None = None) -> np.ndarray:
    """Apply the circuit to a state (default all-zeros) via local kernel updates."""
    if c.n_qubits > SIMULATE_MAX_QUBITS:
        raise ResourceError(f"simulation capped at {SIMULATE_MAX_QUBITS} qubits")
    if state is None:
        state = zero_state(c.n_qubits)
    else:
        state = np.asarray(state, dtype=complex)
        if state.shape != (2 ** c.n_qubits,):
            raise DimensionError(f"state length {state.shape} mismatches {c.n_qubits} qubits")
        if abs(np.vdot(state, state).real - 1.0) > 1e-10:
            raise ValidationError("input state is not normalized")
    for g in c.gates:
        state = apply_gate_matrix(g.matrix, g.qubits, state, c.n_qubits)
    return state


def fidelity_exact(u: Circuit, v: Circuit) -> float:
    """|<psi_v | psi_u>|^2 on the all-zeros input."""
    if u.n_qubits != v.n_qubits:
        raise DimensionError("fidelity needs equal qubit counts")
    overlap = np.vdot(simulate(v), simulate(u))
    return float(min(1.0, abs(overlap) ** 2))


def _composite_vdag_u(u: Circuit, v: Circuit) -> Circuit:
    """u followed by the gate-wise adjoint of v in reverse order."""
    if u.n_qubits != v.n_qubits:
        raise DimensionError("composite needs equal qubit counts")
    rev = tuple(g.adjoint() for g in reversed(v.gates))
    return Circuit(u.n_qubits, u.gates + rev)


def fidelity_sampled(
    u: Circuit, v: Circuit, shots: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Estimate the fidelity by sampling V†U|0..0> in the computational basis.

    Returns (all-zeros frequency, binomial standard error).
    """
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    amps = simulate(_composite_vdag_u(u, v))
    probs = np.abs(amps) ** 2
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    p = counts[0] / shots
    return float(p), float(math.sqrt(p * (1.0 - p) / shots))


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class EquivalenceVerdict:
    verdict: Verdict
    fidelity_estimate: float
    shots: int | None = None


def default_shots(gap_eps: float) -> int:
    return math.ceil(16.0 / gap_eps ** 2)


def decide_equivalence(
    u: Circuit,
    v: Circuit,
    gap_eps: float,
    mode: str = "exact",
    shots: int | None = None,
    rng: np.random.Generator | None = None,
) -> EquivalenceVerdict:
    """Decide the promised equivalence problem with gap 1/poly(n) = gap_eps.

    Exact mode: YES iff F >= 1 - gap_eps, NO iff F <= 1 - 2*gap_eps,
    INDETERMINATE in the promise-violating band between. Sampled mode compares
    the all-zeros frequency against the midpoint 1 - 1.5*gap_eps and abstains
    within two standard errors of it.
    """
    if not 0.0 < gap_eps < 0.5:
        raise ValidationError("gap_eps must lie in (0, 1/2)")
    if mode == "exact":
        f = fidelity_exact(u, v)
        if f >= 1.0 - gap_eps:
            return EquivalenceVerdict(Verdict.YES, f)
        if f <= 1.0 - 2.0 * gap_eps:
            return EquivalenceVerdict(Verdict.NO, f)
        return EquivalenceVerdict(Verdict.INDETERMINATE, f)
    if mode != "sampled":
        raise ValidationError(f"unknown mode {mode!r}")
    if rng is None:
        rng = np.random.default_rng()
    if shots is None:
        shots = default_shots(gap_eps)
    estimate, stderr = fidelity_sampled(u, v, shots, rng)
    midpoint = 1.0 - 1.5 * gap_eps
    if abs(estimate - midpoint) <= 2.0 * stderr:
        return EquivalenceVerdict(Verdict.INDETERMINATE, estimate, shots)
    verdict = Verdict.YES if estimate > midpoint else Verdict.NO
    return EquivalenceVerdict(verdict, estimate, shots)
