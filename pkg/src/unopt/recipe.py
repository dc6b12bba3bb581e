"""The elementary recipe: pair selection, gate insertion, swapping, decomposition,
synthesis, iterated into a replayable and invertible unoptimization recipe.

One step on a pair (B1, B2) sharing wire s, with free wires o1 (B1's) and o2
(B2's):

1. insert A, A-dagger right after B1 on B2's qubit pair (A-dagger first, so the
   inserted pair cancels),
2. swap A-dagger leftward past B1, replacing it by the three-qubit byproduct
   corrector At = (B1 x I)† (I x A†) (B1 x I) on (o1, s, o2),
3. decompose At into gates of arity <= 2,
4. greedily re-synthesize the touched window into two-qubit blocks.

Every sub-result is recorded, so a recipe replays forward deterministically and
rewinds to the exact original gate list.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .circuit import Circuit, Gate
from .errors import PairSelectionError, RecipeError, ValidationError
from .linalg import adjoint, equal_up_to_global_phase, haar_random_unitary, require_unitary
from .shannon import decompose_three_qubit
from .synthesis import merge_block, scan_blocks

SELECT_RETRIES = 64

_SWAP2 = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


class PairSelection(Enum):
    RANDOM = "random"
    CONCATENATED = "concat"


@dataclass(frozen=True)
class Pair:
    """Two two-qubit gates adjacent on exactly one shared wire."""

    b1_index: int
    b2_index: int
    shared_qubit: int
    b1_other: int
    b2_other: int


def find_pairs(c: Circuit) -> list[Pair]:
    """All (B1, B2) pairs: both two-qubit, sharing exactly one wire, with no
    intervening gate on that wire."""
    pairs = []
    for i, g in enumerate(c.gates):
        if g.arity != 2:
            continue
        for q in g.qubits:
            nxt = None
            for j in range(i + 1, len(c.gates)):
                if q in c.gates[j].qubits:
                    nxt = j
                    break
            if nxt is None:
                continue
            h = c.gates[nxt]
            if h.arity != 2 or set(g.qubits) & set(h.qubits) != {q}:
                continue
            o1 = g.qubits[0] if g.qubits[1] == q else g.qubits[1]
            o2 = h.qubits[0] if h.qubits[1] == q else h.qubits[1]
            pairs.append(Pair(i, nxt, q, o1, o2))
    pairs.sort(key=lambda p: (p.b1_index, p.b2_index))
    return pairs


@dataclass(frozen=True)
class ChainContext:
    """What the chained selection rule needs from the previous step: the
    positions its merge produced and the qubit triple it acted on."""

    produced: frozenset[int]
    triple: tuple[int, int, int]


def select_pair(
    c: Circuit,
    method: PairSelection,
    prev: "ChainContext | ErStep | None",
    rng: np.random.Generator,
    retries: int = SELECT_RETRIES,
) -> Pair:
    """Pick the next pair.

    Random: uniform two-qubit gate, then uniform pair containing it. Chained:
    one member a gate the previous step produced, the other an outside gate,
    one reaching beyond the previous step's qubit triple; among candidates the
    rightmost wins (max b2, ties by b1). Without candidates the rule falls
    back to the random one.
    """
    pairs = find_pairs(c)
    if not pairs:
        raise PairSelectionError("circuit contains no valid gate pair")

    if method is PairSelection.CONCATENATED and prev is not None:
        if isinstance(prev, ErStep):
            prev = prev.chain_context()
        triple = set(prev.triple)

        def outside(i: int) -> bool:
            return not set(c.gates[i].qubits) <= triple

        cands = [
            p
            for p in pairs
            if (p.b1_index in prev.produced and outside(p.b2_index))
            or (p.b2_index in prev.produced and outside(p.b1_index))
        ]
        if cands:
            return max(cands, key=lambda p: (p.b2_index, p.b1_index))

    two_qubit = [i for i, g in enumerate(c.gates) if g.arity == 2]
    for _ in range(retries):
        target = two_qubit[int(rng.integers(len(two_qubit)))]
        cands = [p for p in pairs if target in (p.b1_index, p.b2_index)]
        if cands:
            return cands[int(rng.integers(len(cands)))]
    raise PairSelectionError(f"no pair found within {retries} gate resamples")


def _matrix_on(gate: Gate, want: tuple[int, int]) -> np.ndarray:
    """Gate's matrix re-indexed onto the qubit order `want`."""
    if gate.qubits == want:
        return gate.matrix
    if gate.qubits == (want[1], want[0]):
        return _SWAP2 @ gate.matrix @ _SWAP2
    raise ValidationError(f"gate on {gate.qubits} cannot be expressed on {want}")


def build_a_tilde(b1: Gate, a_dag: np.ndarray, triple: tuple[int, int, int]) -> Gate:
    """Three-qubit corrector (B1 x I)† (I x A†) (B1 x I) on (o1, s, o2).

    b1 must act on {o1, s}; a_dag is given on (s, o2). The returned gate G
    satisfies: applying B1 then G equals applying A† then B1.
    """
    o1, s, o2 = triple
    a_dag = require_unitary(np.asarray(a_dag, dtype=complex), "inserted gate")
    b1_mat = _matrix_on(b1, (o1, s))
    b1_embedded = np.kron(b1_mat, np.eye(2))
    a_embedded = np.kron(np.eye(2), a_dag)
    a_tilde = b1_embedded.conj().T @ a_embedded @ b1_embedded
    return Gate(triple, a_tilde, "a-tilde")


@dataclass(frozen=True)
class ErStep:
    """Everything one elementary-recipe step needs for replay and inversion.

    `pre_synthesis` is the window before merging: decomposition gates, then
    B1, A, the untouched mid gates, and B2. `synthesis_groups` maps merged
    output gates back to index groups over that list.
    """

    pair: Pair
    b2_qubits: tuple[int, int]
    triple: tuple[int, int, int]
    inserted_a: np.ndarray
    a_tilde: np.ndarray
    decomposition_gates: tuple[Gate, ...]
    pre_synthesis: tuple[Gate, ...]
    synthesis_groups: tuple[tuple[int, ...], ...]
    merged: tuple[Gate, ...]
    window_start: int
    pre_gate_count: int
    post_gate_count: int

    def mid_input_range(self) -> range:
        """Indices into pre_synthesis occupied by untouched mid gates."""
        lo = len(self.decomposition_gates) + 2  # decomposition, then B1, A
        return range(lo, len(self.pre_synthesis) - 1)

    def produced_mask(self) -> list[bool]:
        """Which merged outputs this step created (vs mids passed through)."""
        mids = self.mid_input_range()
        return [
            len(group) > 1 or group[0] not in mids
            for group in self.synthesis_groups
        ]

    def chain_context(self) -> "ChainContext":
        produced = frozenset(
            self.window_start + j
            for j, created in enumerate(self.produced_mask())
            if created
        )
        return ChainContext(produced, self.triple)

    def to_json(self) -> dict:
        from .linalg import matrix_to_json

        return {
            "pair": [self.pair.b1_index, self.pair.b2_index, self.pair.shared_qubit,
                     self.pair.b1_other, self.pair.b2_other],
            "b2_qubits": list(self.b2_qubits),
            "triple": list(self.triple),
            "inserted_a": matrix_to_json(self.inserted_a),
            "a_tilde": matrix_to_json(self.a_tilde),
            "decomposition_gates": [g.to_json() for g in self.decomposition_gates],
            "pre_synthesis": [g.to_json() for g in self.pre_synthesis],
            "synthesis_groups": [list(g) for g in self.synthesis_groups],
            "merged": [g.to_json() for g in self.merged],
            "window_start": self.window_start,
            "pre_gate_count": self.pre_gate_count,
            "post_gate_count": self.post_gate_count,
        }

    @staticmethod
    def from_json(d: dict) -> "ErStep":
        from .linalg import matrix_from_json

        return ErStep(
            pair=Pair(*d["pair"]),
            b2_qubits=tuple(d["b2_qubits"]),
            triple=tuple(d["triple"]),
            inserted_a=matrix_from_json(d["inserted_a"]),
            a_tilde=matrix_from_json(d["a_tilde"]),
            decomposition_gates=tuple(Gate.from_json(g) for g in d["decomposition_gates"]),
            pre_synthesis=tuple(Gate.from_json(g) for g in d["pre_synthesis"]),
            synthesis_groups=tuple(tuple(g) for g in d["synthesis_groups"]),
            merged=tuple(Gate.from_json(g) for g in d["merged"]),
            window_start=d["window_start"],
            pre_gate_count=d["pre_gate_count"],
            post_gate_count=d["post_gate_count"],
        )


def circuit_fingerprint(c: Circuit) -> str:
    payload = json.dumps(c.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class Recipe:
    """Ordered ER steps plus fingerprints of the circuits they connect."""

    source_fingerprint: str
    output_fingerprint: str
    steps: tuple[ErStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "format": "unopt-recipe-v1",
            "source_fingerprint": self.source_fingerprint,
            "output_fingerprint": self.output_fingerprint,
            "steps": [s.to_json() for s in self.steps],
        }

    @staticmethod
    def from_json(d: dict) -> "Recipe":
        if d.get("format") != "unopt-recipe-v1":
            raise RecipeError(f"unknown recipe format {d.get('format')!r}")
        return Recipe(
            d["source_fingerprint"],
            d["output_fingerprint"],
            tuple(ErStep.from_json(s) for s in d["steps"]),
        )


def elementary_recipe_step(c: Circuit, pair: Pair, a: np.ndarray) -> tuple[Circuit, ErStep]:
    """Run one insert/swap/decompose/synthesize cycle on the given pair."""
    a = require_unitary(np.asarray(a, dtype=complex), "inserted gate A")
    i1, i2 = pair.b1_index, pair.b2_index
    b1, b2 = c.gates[i1], c.gates[i2]
    if b1.arity != 2 or b2.arity != 2:
        raise ValidationError("pair members must be two-qubit gates")
    triple = (pair.b1_other, pair.shared_qubit, pair.b2_other)

    a_gate = Gate(b2.qubits, a, "inserted-A")
    a_dag_on_so2 = adjoint(_matrix_on(a_gate, (pair.shared_qubit, pair.b2_other)))
    a_tilde = build_a_tilde(b1, a_dag_on_so2, triple)
    decomposition = decompose_three_qubit(a_tilde.matrix, triple).gates

    mids = c.gates[i1 + 1 : i2]
    pre_synthesis = decomposition + (b1, a_gate) + mids + (b2,)
    groups = scan_blocks(pre_synthesis, max_block=2)
    merged = tuple(merge_block(pre_synthesis, g) for g in groups)

    out = Circuit(c.n_qubits, c.gates[:i1] + merged + c.gates[i2 + 1 :])
    step = ErStep(
        pair=pair,
        b2_qubits=b2.qubits,
        triple=triple,
        inserted_a=a,
        a_tilde=a_tilde.matrix,
        decomposition_gates=decomposition,
        pre_synthesis=pre_synthesis,
        synthesis_groups=tuple(tuple(g) for g in groups),
        merged=merged,
        window_start=i1,
        pre_gate_count=len(c.gates),
        post_gate_count=len(out.gates),
    )
    return out, step


def unoptimize(
    u: Circuit,
    method: PairSelection = PairSelection.RANDOM,
    k: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[Circuit, Recipe]:
    """Apply k elementary-recipe steps (default k = n_qubits^2) to u."""
    if u.n_qubits < 3:
        raise ValidationError("unoptimize needs at least 3 qubits (a step spans 3 wires)")
    if rng is None:
        rng = np.random.default_rng()
    if k is None:
        k = u.n_qubits ** 2
    if k < 0:
        raise ValidationError("k must be non-negative")

    c = u
    steps: list[ErStep] = []
    prev: ChainContext | None = None
    for idx in range(k):
        try:
            pair = select_pair(c, method, prev, rng)
        except PairSelectionError as exc:
            raise PairSelectionError(f"step {idx}: {exc}") from exc
        a = haar_random_unitary(4, rng)
        c, step = elementary_recipe_step(c, pair, a)
        steps.append(step)
        prev = step.chain_context()
    return c, Recipe(circuit_fingerprint(u), circuit_fingerprint(c), tuple(steps))


def _gates_match(got: tuple[Gate, ...], want: tuple[Gate, ...], atol: float) -> bool:
    if len(got) != len(want):
        return False
    for g, w in zip(got, want):
        if g.qubits != w.qubits:
            return False
        if not np.allclose(g.matrix, w.matrix, atol=atol):
            return False
    return True


def apply_recipe(u: Circuit, recipe: Recipe) -> Circuit:
    """Replay a recipe on its source circuit, without randomness.

    Each step is recomputed and checked against the recorded intermediates; the
    recorded gates are what gets spliced in, so the output is bit-identical to
    the recorded one.
    """
    if circuit_fingerprint(u) != recipe.source_fingerprint:
        raise RecipeError("recipe fingerprint does not match the source circuit")
    c = u
    for idx, step in enumerate(recipe.steps):
        if step.pair.b2_index >= len(c.gates):
            raise RecipeError(f"step {idx}: recorded pair is out of range")
        _, recomputed = elementary_recipe_step(c, step.pair, step.inserted_a)
        if not np.allclose(recomputed.a_tilde, step.a_tilde, atol=1e-9) or not _gates_match(
            recomputed.merged, step.merged, atol=1e-9
        ):
            raise RecipeError(f"step {idx}: replay diverged from the recorded intermediates")
        i1 = step.window_start
        c = Circuit(
            c.n_qubits,
            c.gates[:i1] + step.merged + c.gates[step.pair.b2_index + 1 :],
        )
    if circuit_fingerprint(c) != recipe.output_fingerprint:
        raise RecipeError("replayed circuit does not match the recorded output")
    return c


def invert_recipe(v: Circuit, recipe: Recipe) -> Circuit:
    """Rewind a recipe, restoring the exact original gate list."""
    if circuit_fingerprint(v) != recipe.output_fingerprint:
        raise RecipeError("circuit does not match the recipe's recorded output")
    c = v
    for idx, step in zip(range(len(recipe.steps) - 1, -1, -1), reversed(recipe.steps)):
        i1 = step.window_start
        window = c.gates[i1 : i1 + len(step.merged)]
        if not _gates_match(window, step.merged, atol=1e-12):
            raise RecipeError(f"step {idx}: output window does not match the recorded merge")
        # un-synthesize, un-decompose, un-swap, un-insert
        n_dec = len(step.decomposition_gates)
        tail = step.pre_synthesis[n_dec:]  # (B1, A, mids..., B2)
        b1 = tail[0]
        restored = (b1,) + tail[2:]  # drop A; A-dagger disappears with the swap
        c = Circuit(
            c.n_qubits,
            c.gates[:i1] + restored + c.gates[i1 + len(step.merged) :],
        )
    if circuit_fingerprint(c) != recipe.source_fingerprint:
        raise RecipeError("rewound circuit does not match the recorded source")
    return c


@dataclass(frozen=True)
class WitnessResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_recipe_witness(u: Circuit, v: Circuit, recipe: Recipe) -> WitnessResult:
    """Check that the recipe transforms u into v, gate for gate.

    Matrices may differ by a per-gate global phase up to 1e-8; anything else
    (extra gates, different wires) fails.
    """
    try:
        replayed = apply_recipe(u, recipe)
    except RecipeError as exc:
        return WitnessResult(False, str(exc))
    if replayed.n_qubits != v.n_qubits:
        return WitnessResult(False, "qubit counts differ")
    if len(replayed.gates) != len(v.gates):
        return WitnessResult(False, "gate counts differ")
    for i, (g, h) in enumerate(zip(replayed.gates, v.gates)):
        if g.qubits != h.qubits:
            return WitnessResult(False, f"gate {i}: qubit tuples differ")
        if not equal_up_to_global_phase(g.matrix, h.matrix, 1e-8):
            return WitnessResult(False, f"gate {i}: matrices differ beyond phase")
    return WitnessResult(True)
