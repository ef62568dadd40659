import pytest

from trio3pc.cli import EXIT_ABORT, EXIT_OK, EXIT_USAGE, main
from trio3pc.circuit import and_gate, format_circuit, parse_circuit


@pytest.fixture
def and_file(tmp_path):
    path = tmp_path / "and.circ"
    path.write_text(format_circuit(and_gate()))
    return str(path)


def test_run_semi_honest(and_file, capsys):
    assert main(["run", "--circuit", and_file, "--inputs", "p1:1,p2:1", "--mode", "semi-honest"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "output 1" in out
    assert "rounds 3" in out


def test_run_malicious_honest(capsys):
    assert main(["run", "--circuit", "majority", "--inputs", "p1:1,p2:0,p3:1", "--s", "4", "--seed", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("mode malicious s=4 seed=1")
    assert "output 1" in out


def test_run_with_adversary_aborts(capsys):
    code = main(["run", "--circuit", "and", "--inputs", "p1:1,p2:1", "--adversary", "commitment-equivocation"])
    out = capsys.readouterr().out
    assert code == EXIT_ABORT
    assert "abort commitment" in out
    assert "P1 (corrupted)" in out


def test_trace_goes_to_stderr(monkeypatch, capsys):
    monkeypatch.setenv("TRIO_TRACE", "1")
    main(["run", "--circuit", "and", "--inputs", "p1:1,p2:0", "--mode", "semi-honest"])
    err = capsys.readouterr().err.splitlines()
    assert len(err) == 15  # 6 input shares, 3 AND messages, 6 output shares
    assert err[0].startswith("1 1 ")


@pytest.mark.parametrize("argv", [
    ["run", "--circuit", "nope.circ", "--inputs", "p1:1"],
    ["run", "--circuit", "and", "--inputs", "p1:11,p2:1"],
    ["run", "--circuit", "and", "--inputs", "p4:1"],
    ["run", "--circuit", "and", "--inputs", "p1:1,p2:1", "--mode", "semi-honest", "--adversary", "guess-c"],
    ["run", "--circuit", "and", "--inputs", "p1:1,p2:1", "--adversary", "bribe"],
    ["run", "--circuit", "and", "--inputs", "p1:1,p2:1", "--s", "0"],
    ["attack", "bribe"],
    ["attack"],
    ["bench", "--s", "1"],
    ["gen-circuit", "or"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_bad_circuit_file(tmp_path, capsys):
    path = tmp_path / "bad.circ"
    path.write_text("circuit 2 1 1\nparties 1 2 2\nAND 2 1 -> 3\n")
    assert main(["run", "--circuit", str(path), "--inputs", "p1:1,p2:1"]) == EXIT_USAGE
    assert "line 3" in capsys.readouterr().err


def test_attack_reports_rate(capsys):
    assert main(["attack", "guess-c", "--s", "2", "--trials", "200", "--circuit", "and"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("guess-c s=2 trials=200 wins=")
    assert out[2] == "reference 2^-2 = 0.250000"


def test_bench_reports_constant_offsets(capsys):
    assert main(["bench", "--s", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "semi-honest: rounds - and_depth = 2 (constant)" in out
    assert "malicious: rounds - and_depth = 7 (constant)" in out
    assert "malicious overhead over semi-honest: 5 rounds" in out


def test_gen_circuit(tmp_path, capsys):
    assert main(["gen-circuit", "and-chain:3"]) == EXIT_OK
    c = parse_circuit(capsys.readouterr().out)
    assert c.and_depth() == 3
    assert main(["gen-circuit", "--all", str(tmp_path / "circuits")]) == EXIT_OK
    assert len(list((tmp_path / "circuits").glob("*.circ"))) == 7
