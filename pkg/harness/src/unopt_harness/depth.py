"""Depth measurement on {u3, cx} OpenQASM text.

Every compiler's output goes through the same final {U3, CX} conversion and
then through this one scanner, so reported depths are comparable across
toolchains.
"""

from __future__ import annotations

import re

_QREG = re.compile(r"qreg\s+(\w+)\[(\d+)\]")
_GATE = re.compile(r"^\s*(u3|u2|u1|u|p|id|rz|cx)\b[^;]*?((?:\w+\[\d+\]\s*,?\s*)+);")
_OPERAND = re.compile(r"\w+\[(\d+)\]")

SUPPORTED = {"u3", "u2", "u1", "u", "p", "id", "rz", "cx"}


def qasm_depth(text: str) -> tuple[int, int]:
    """(depth, gate count) of a {u3, cx}-family QASM program, all ops counted."""
    frontier: dict[int, int] = {}
    depth = 0
    count = 0
    for raw in text.splitlines():
        line = raw.split("//")[0].strip()
        if not line or line.startswith(("OPENQASM", "include", "qreg", "creg", "barrier")):
            continue
        m = _GATE.match(line)
        if not m:
            opcode = line.split("(")[0].split()[0]
            raise ValueError(f"unsupported opcode in compiled output: {opcode!r}")
        count += 1
        qubits = [int(q) for q in _OPERAND.findall(m.group(2))]
        layer = 1 + max((frontier.get(q, 0) for q in qubits), default=0)
        for q in qubits:
            frontier[q] = layer
        depth = max(depth, layer)
    return depth, count
