"""Greedy merging of gate runs into unitary blocks of bounded width."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate, apply_gate_matrix, depth
from .errors import ValidationError


@dataclass
class _Block:
    index: int
    support: set[int]
    members: list[int] = field(default_factory=list)


def scan_blocks(gates: tuple[Gate, ...], max_block: int) -> list[list[int]]:
    """Greedy block partition of a gate list; returns member indices per block.

    A gate joins the earliest open block whose support union stays within
    max_block and that is not wire-blocked: a block is blocked for a gate when
    any of the gate's wires was last touched by a *later* block (joining would
    reorder the gate before that block's gates).
    """
    if max_block not in (2, 3):
        raise ValidationError(f"max_block must be 2 or 3, got {max_block}")
    blocks: list[_Block] = []
    last_toucher: dict[int, _Block] = {}

    for i, g in enumerate(gates):
        if g.arity > max_block:
            raise ValidationError(f"gate arity {g.arity} exceeds max_block {max_block}")
        s = set(g.qubits)
        home = None
        for b in blocks:
            if len(b.support | s) > max_block:
                continue
            if all(
                q not in last_toucher or last_toucher[q].index <= b.index for q in s
            ):
                home = b
                break
        if home is None:
            home = _Block(index=len(blocks), support=set())
            blocks.append(home)
        home.support |= s
        home.members.append(i)
        for q in s:
            last_toucher[q] = home
    return [b.members for b in blocks]


def merge_block(gates: tuple[Gate, ...], members: list[int]) -> Gate:
    """One merged gate for a block: the ordered product on the sorted support."""
    if len(members) == 1:
        return gates[members[0]]
    support = tuple(sorted({q for i in members for q in gates[i].qubits}))
    m = len(support)
    # Physical qubit support[j] maps to register bit m-1-j, so the accumulated
    # operator's index is already in the MSB-first gate convention over support.
    slot = {q: m - 1 - j for j, q in enumerate(support)}
    u = np.eye(2 ** m, dtype=complex)
    for i in members:
        g = gates[i]
        u = apply_gate_matrix(g.matrix, tuple(slot[q] for q in g.qubits), u, m)
    return Gate(support, u)


def greedy_synthesize(c: Circuit, max_block: int = 2) -> Circuit:
    """Left-to-right scan merging gates into blocks of at most max_block qubits.

    Blocks emit one merged gate each, in creation order; single-member blocks
    pass the original gate through unchanged.
    """
    groups = scan_blocks(c.gates, max_block)
    return Circuit(c.n_qubits, tuple(merge_block(c.gates, g) for g in groups))


def merged_depth3(c: Circuit) -> int:
    """Depth after merging into three-qubit blocks (the d3 diagnostic)."""
    if any(g.arity > 2 for g in c.gates):
        raise ValidationError("merged_depth3 expects gates of arity <= 2")
    return depth(greedy_synthesize(c, max_block=3))
