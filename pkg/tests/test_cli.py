import json

import pytest

from secindex.cli import (
    EXIT_DATA_ERROR,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    main,
)

from .conftest import FIXTURES

CHAIN = str(FIXTURES / "chain.json")
COLLIDER = str(FIXTURES / "collider.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_index_full_report(capsys):
    code, out, _ = run(capsys, "index", "--input", CHAIN)
    assert code == EXIT_OK
    doc = json.loads(out)
    entries = {e["name"]: e["index"] for e in doc["results"]}
    assert entries == {"u1": 2, "u2": "inf", "a_y1": 2}
    witness = {e["name"]: e.get("witness") for e in doc["results"]}
    assert witness["u1"] == ["u1", "a_y1"]


def test_index_single_component(capsys):
    code, out, _ = run(capsys, "index", "--input", CHAIN, "--component", "u1")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert [e["name"] for e in doc["results"]] == ["u1"]
    assert doc["results"][0]["index"] == 2


def test_index_unknown_component(capsys):
    code, out, err = run(capsys, "index", "--input", CHAIN, "--component", "u9")
    assert code == EXIT_DATA_ERROR
    assert out == ""
    assert "u9" in err


def test_index_cap_exceeded(capsys):
    code, _, err = run(capsys, "index", "--input", CHAIN, "--component", "u1", "--cap", "1")
    assert code == EXIT_DATA_ERROR
    assert "cap" in err


def test_index_missing_file(capsys):
    code, _, err = run(capsys, "index", "--input", "no_such_file.json")
    assert code == EXIT_DATA_ERROR
    assert err


def test_index_writes_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "index", "--input", CHAIN, "--output", str(out_path))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(out_path.read_text())["graph"]["states"] == 4


def test_linking_chain_pair(capsys):
    code, out, _ = run(capsys, "linking", "--input", CHAIN, "--sources", "u1,a_y1")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "maximum linking size: 1"


def test_linking_collider_full(capsys):
    code, out, _ = run(capsys, "linking", "--input", COLLIDER, "--sources", "u1,u2,u3")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "maximum linking size: 2"
    assert len(lines) == 3  # two witness paths


def test_linking_empty_sources(capsys):
    code, out, _ = run(capsys, "linking", "--input", CHAIN, "--sources", "")
    assert code == EXIT_OK
    assert out == "maximum linking size: 0\n"


def test_linking_explicit_targets(capsys):
    code, out, _ = run(
        capsys, "linking", "--input", CHAIN, "--sources", "u2", "--targets", "y3"
    )
    assert code == EXIT_OK
    assert out.splitlines()[0] == "maximum linking size: 1"


def test_linking_unknown_name(capsys):
    code, _, err = run(capsys, "linking", "--input", CHAIN, "--sources", "u1,ghost")
    assert code == EXIT_DATA_ERROR
    assert "ghost" in err


def test_verify_collider_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "--input", COLLIDER, "--trials", "5", "--seed", "7"
    )
    assert code == EXIT_OK
    assert "verdict: PASS" in out
    assert "rank/linking agreement" in out
    assert "identical index vectors: 5/5" in out


def test_verify_fails_with_broken_tolerance(capsys):
    # A tolerance of 0.99 collapses genuine singular values to zero, so the
    # rank checks must disagree with the linking sizes and the gate must trip.
    code, out, _ = run(
        capsys,
        "verify", "--input", CHAIN, "--trials", "2", "--seed", "7", "--tol", "0.99",
    )
    assert code == EXIT_VERIFY_FAILED
    assert "verdict: FAIL" in out


def test_verify_rejects_zero_trials(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--input", CHAIN, "--trials", "0"])
    assert excinfo.value.code == EXIT_USAGE


def test_missing_input_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["index"])
    assert excinfo.value.code == EXIT_USAGE


def test_export_dot_stdout_and_highlight(capsys):
    code, out, _ = run(
        capsys, "export-dot", "--input", CHAIN, "--highlight-sources", "a_y1"
    )
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert '"a_y1" -> "y1" [color=crimson, penwidth=2.0];' in out


def test_export_dot_to_file(tmp_path, capsys):
    out_path = tmp_path / "graph.dot"
    code, out, _ = run(capsys, "export-dot", "--input", CHAIN, "--output", str(out_path))
    assert code == EXIT_OK
    assert out == ""
    assert out_path.read_text().startswith("digraph")


def test_repeated_invocations_are_byte_identical(capsys):
    _, first, _ = run(capsys, "index", "--input", CHAIN)
    _, second, _ = run(capsys, "index", "--input", CHAIN)
    assert first == second
    _, first, _ = run(capsys, "verify", "--input", COLLIDER, "--trials", "3", "--seed", "1")
    _, second, _ = run(capsys, "verify", "--input", COLLIDER, "--trials", "3", "--seed", "1")
    assert first == second
