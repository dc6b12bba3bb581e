import json

import pytest

from unopt.cli import main


def run(argv):
    return main([str(a) for a in argv])


def test_generate_unoptimize_verify_roundtrip(tmp_path, capsys):
    u_path = tmp_path / "u.json"
    v_path = tmp_path / "v.json"
    r_path = tmp_path / "r.json"
    assert run(["generate", 4, "--seed", 3, "--out", u_path]) == 0
    assert run([
        "unoptimize", u_path, "--method", "concat", "--k", 6, "--seed", 1,
        "--out", v_path, "--recipe-out", r_path,
    ]) == 0
    assert run(["verify", u_path, v_path, "--gap-eps", 0.05]) == 0
    assert run(["verify", u_path, v_path, "--recipe", r_path]) == 0
    out = capsys.readouterr().out
    assert "verdict: yes" in out and "witness: ok" in out


def test_verify_no_returns_one(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["generate", 4, "--seed", 1, "--out", a])
    run(["generate", 4, "--seed", 2, "--out", b])
    assert run(["verify", a, b, "--gap-eps", 0.05]) == 1
    assert "verdict: no" in capsys.readouterr().out


def test_convert_and_merge3(tmp_path, capsys):
    u_path = tmp_path / "u.json"
    q_path = tmp_path / "u.qasm"
    run(["generate", 4, "--seed", 5, "--out", u_path])
    assert run(["convert", u_path, "--out", q_path]) == 0
    text = q_path.read_text()
    assert text.startswith("OPENQASM 2.0;")
    assert run(["merge3", u_path]) == 0
    depth3 = capsys.readouterr().out.strip().splitlines()[-1]
    assert depth3.isdigit()


def test_bench_and_merge_results(tmp_path, capsys):
    out = tmp_path / "run"
    assert run(["bench", "--n-min", 3, "--n-max", 3, "--samples", 2,
                "--seed", 7, "--out", out]) == 0
    harness = {
        "n3_s0": {"qiskit": {"d_opt": 4}},
        "n3_s1": {"qiskit": {"d_opt": 5}},
    }
    h_path = tmp_path / "h.json"
    h_path.write_text(json.dumps(harness))
    merged_path = tmp_path / "merged.csv"
    assert run(["merge-results", out / "records.csv", "--harness", h_path,
                "--out", merged_path]) == 0
    assert "r_opt" in merged_path.read_text().splitlines()[0]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["unknown-subcommand"])
    assert exc.value.code == 2


def test_internal_error_exit_code(tmp_path):
    missing = tmp_path / "nope.json"
    assert run(["merge3", missing]) == 3
