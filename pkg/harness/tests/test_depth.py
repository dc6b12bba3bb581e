import pytest

from unopt_harness import qasm_depth

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[4];\n'


def test_single_cx():
    depth, count = qasm_depth(HEADER + "cx q[0],q[1];\n")
    assert depth == 1 and count == 1


def test_parallel_vs_serial():
    parallel = HEADER + "cx q[0],q[1];\ncx q[2],q[3];\n"
    serial = HEADER + "cx q[0],q[1];\ncx q[1],q[2];\n"
    assert qasm_depth(parallel)[0] == 1
    assert qasm_depth(serial)[0] == 2


def test_single_qubit_ops_count():
    text = HEADER + "u3(0.1,0.2,0.3) q[0];\nu3(0.4,0.5,0.6) q[0];\ncx q[0],q[1];\n"
    depth, count = qasm_depth(text)
    assert depth == 3 and count == 3


def test_u_family_and_rz_accepted():
    text = HEADER + "u(0.1,0.2,0.3) q[0];\nrz(0.5) q[1];\nu1(0.2) q[2];\nid q[3];\n"
    depth, count = qasm_depth(text)
    assert depth == 1 and count == 4


def test_comments_and_empty():
    assert qasm_depth(HEADER + "// nothing\n") == (0, 0)


def test_unsupported_opcode():
    with pytest.raises(ValueError, match="h"):
        qasm_depth(HEADER + "h q[0];\n")
