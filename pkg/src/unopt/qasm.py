"""OpenQASM 2.0 emission and parsing for {U3, CX} circuits.

Export requires a circuit already in the {U3, CX} basis. Import accepts u3, cx,
and the u1/u2/id special cases, with angle expressions over numbers, pi and
+-*/ (what Qiskit and tket emit for this gate set).
"""

from __future__ import annotations

import ast
import math
import operator
import re
from pathlib import Path

from .circuit import CX_MATRIX, Circuit, Gate
from .errors import QasmError
from .kak import u3_matrix, u3_params

_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

_BIN_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def _eval_angle(text: str) -> float:
    """Evaluate an angle expression over numbers, pi, and + - * / ( )."""

    def walk(node: ast.AST) -> float:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN_OPS:
            return _BIN_OPS[type(node.op)](walk(node.left), walk(node.right))
        raise QasmError(f"unsupported angle expression: {text!r}")

    try:
        return walk(ast.parse(text, mode="eval"))
    except SyntaxError as exc:
        raise QasmError(f"bad angle expression: {text!r}") from exc


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def circuit_to_qasm(c: Circuit) -> str:
    lines = [_HEADER + f"qreg q[{c.n_qubits}];"]
    for g in c.gates:
        if g.label == "CX":
            ctrl, tgt = g.qubits
            lines.append(f"cx q[{ctrl}],q[{tgt}];")
        elif g.label == "U3":
            theta, phi, lam = g.params if g.params is not None else u3_params(g.matrix)
            lines.append(f"u3({_fmt(theta)},{_fmt(phi)},{_fmt(lam)}) q[{g.qubits[0]}];")
        else:
            raise QasmError(
                f"gate {g.label!r} on {g.qubits} is not in the U3/CX basis; "
                "run to_u3cx_basis first"
            )
    return "\n".join(lines) + "\n"


def export_qasm(c: Circuit, path: str | Path) -> None:
    Path(path).write_text(circuit_to_qasm(c))


def _u3(qubit: int, theta: float, phi: float, lam: float) -> Gate:
    return Gate((qubit,), u3_matrix(theta, phi, lam), "U3", (theta, phi, lam))


_STATEMENT = re.compile(
    r"^(?P<name>[a-zA-Z_][\w]*)\s*(?:\((?P<args>[^)]*)\))?\s*(?P<operands>[^;]*);$"
)
_QUBIT = re.compile(r"^q\[(\d+)\]$")


def qasm_to_circuit(text: str) -> Circuit:
    n_qubits: int | None = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//")[0].strip()
        if not line:
            continue
        for stmt in filter(None, (s.strip() for s in line.replace("}", ";").split(";"))):
            stmt += ";"
            if stmt.startswith(("OPENQASM", "include", "barrier", "creg")):
                continue
            m = _STATEMENT.match(stmt)
            if not m:
                raise QasmError(f"line {lineno}: cannot parse {stmt!r}")
            name = m.group("name")
            args = [_eval_angle(a) for a in (m.group("args") or "").split(",") if a.strip()]
            operands = [op.strip() for op in m.group("operands").split(",") if op.strip()]
            if name == "qreg":
                reg = re.match(r"^q\[(\d+)\]$", operands[0])
                if not reg:
                    raise QasmError(f"line {lineno}: only a single register named q is supported")
                n_qubits = int(reg.group(1))
                continue
            if n_qubits is None:
                raise QasmError(f"line {lineno}: gate before qreg declaration")
            qubits = []
            for op in operands:
                qm = _QUBIT.match(op)
                if not qm:
                    raise QasmError(f"line {lineno}: bad operand {op!r}")
                qubits.append(int(qm.group(1)))
            if name == "cx":
                if len(qubits) != 2:
                    raise QasmError(f"line {lineno}: cx needs two qubits")
                gates.append(Gate(tuple(qubits), CX_MATRIX, "CX"))
            elif name in ("u3", "u"):
                theta, phi, lam = args
                gates.append(_u3(qubits[0], theta, phi, lam))
            elif name == "u2":
                phi, lam = args
                gates.append(_u3(qubits[0], math.pi / 2, phi, lam))
            elif name in ("u1", "p"):
                gates.append(_u3(qubits[0], 0.0, 0.0, args[0]))
            elif name == "id":
                gates.append(_u3(qubits[0], 0.0, 0.0, 0.0))
            else:
                raise QasmError(f"line {lineno}: unsupported opcode {name!r}")
    if n_qubits is None:
        raise QasmError("no qreg declaration found")
    return Circuit(n_qubits, tuple(gates))


def import_qasm(path: str | Path) -> Circuit:
    return qasm_to_circuit(Path(path).read_text())
