from __future__ import annotations

import json

import pytest

from adjcrystal.cli import (EXIT_DOMAIN, EXIT_FAIL, EXIT_OK, EXIT_USAGE, convert_element,
                            kernel_table, main)
from adjcrystal.crystal import graph_json_from_dot
from adjcrystal.walls import WallPattern, YoungWall

YN = YoungWall(WallPattern("Yn", 3, 0), (4, 4, 3, 3, 1))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_graph_depth_two_counts(capsys):
    # f_0 opens the graph; afterwards f_1 and f_3 both act on Lambda_0 - alpha_0
    code, out, _ = run(capsys, "graph", "--n", "3", "--realization", "wall1", "--depth", "2")
    assert code == EXIT_OK
    g = json.loads(out)
    assert len(g["vertices"]) == 4
    assert len(g["edges"]) == 3


@pytest.mark.parametrize("real", ["wall1", "walln", "path1", "pathn", "pathad"])
def test_graph_realizations_agree_in_size(capsys, real):
    code, out, _ = run(capsys, "graph", "--n", "2", "--realization", real, "--depth", "6")
    assert code == EXIT_OK
    g = json.loads(out)
    assert (len(g["vertices"]), len(g["edges"])) == (22, 24)
    _, out2, _ = run(capsys, "graph", "--n", "2", "--realization", real, "--depth", "6")
    assert out2 == out


def test_graph_dot_roundtrip(capsys, tmp_path):
    target = tmp_path / "g.dot"
    code, _, _ = run(capsys, "graph", "--n", "2", "--realization", "pathad", "--depth", "4",
                     "--format", "dot", "--out", str(target))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "graph", "--n", "2", "--realization", "pathad", "--depth", "4")
    back = graph_json_from_dot(target.read_text())
    assert sorted(back["edges"], key=str) == sorted(json.loads(out)["edges"], key=str)


def test_convert_commands(capsys, tmp_path):
    src = tmp_path / "y.json"
    src.write_text(json.dumps(YN.to_json()))
    code, out, _ = run(capsys, "convert", "--from", "walln", "--to", "pathad", "--in", str(src))
    assert code == EXIT_OK
    p = json.loads(out)
    assert p["crystal"] == "Bad" and len(p["tail"]) == 4
    code, out, _ = run(capsys, "convert", "--from", "walln", "--to", "wall1", "--in", str(src))
    assert json.loads(out)["heights"] == [3] + [1] * 12
    code, out, _ = run(capsys, "convert", "--from", "walln", "--to", "walln", "--in", str(src))
    assert json.loads(out) == YN.to_json()


def test_convert_errors(capsys, tmp_path):
    src = tmp_path / "y.json"
    src.write_text(json.dumps(YN.to_json()))
    code, _, err = run(capsys, "convert", "--from", "wall1", "--to", "pathad", "--in", str(src))
    assert code == EXIT_USAGE and "expected" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "convert", "--from", "walln", "--to", "path1", "--in", str(bad))[0] == EXIT_USAGE
    nr = tmp_path / "nr.json"
    nr.write_text(json.dumps({"kind": "Yn", "n": 1, "k": 0, "heights": [2]}))
    assert run(capsys, "convert", "--from", "walln", "--to", "path1", "--in", str(nr))[0] == EXIT_DOMAIN


def test_convert_element_roundtrip():
    p = convert_element(YN, "walln", "path1")
    assert convert_element(p, "path1", "walln") == YN


def test_kernels_table(capsys, tmp_path):
    src = tmp_path / "y.json"
    src.write_text(json.dumps(YN.to_json()))
    code, out, _ = run(capsys, "kernels", "--wall", str(src))
    assert code == EXIT_OK
    assert out == kernel_table(YN, 0, 5, 997)
    lines = out.splitlines()
    assert lines[2] == "fiber_dim 13"
    header = lines[4].split("\t")
    rows = [dict(zip(header, ln.split("\t"))) for ln in lines[5:]]
    assert [int(r["ker_xbar"]) for r in rows[:6]] == [0, 4, 8, 11, 14, 15]
    assert rows[3]["graded_ker_xxbar"] == "3,4,4,3"


def test_kernels_env_seed(capsys, tmp_path, monkeypatch):
    src = tmp_path / "y.json"
    src.write_text(json.dumps(YN.to_json()))
    monkeypatch.setenv("CRYSTAL_SEED", "11")
    _, out, _ = run(capsys, "kernels", "--wall", str(src))
    assert "seeds 11,12,13,14,15" in out
    monkeypatch.setenv("CRYSTAL_SEED", "eleven")
    assert run(capsys, "kernels", "--wall", str(src))[0] == EXIT_USAGE


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "perfect", "--crystal", "bad", "--n", "3")
    assert code == EXIT_OK and "PASS perfect Bad n=3" in out
    code, out, _ = run(capsys, "verify", "sweep", "--n", "2", "--max-blocks", "4")
    assert code == EXIT_OK and "PASS sweep" in out
    code, out, _ = run(capsys, "verify", "example-a3")
    assert code == EXIT_OK
    assert out.count("PASS") == 5 and "note: c-sequence" in out


def test_sweep_certificates_file(capsys, tmp_path):
    target = tmp_path / "certs.json"
    code, _, _ = run(capsys, "verify", "sweep", "--n", "2", "--max-blocks", "3", "--out", str(target))
    assert code == EXIT_OK
    certs = json.loads(target.read_text())
    assert all(c["verdict"] == "pass" for c in certs)
    assert certs[0]["wall"]["heights"] == []


@pytest.mark.parametrize("argv", [
    ["graph", "--n", "0", "--realization", "wall1", "--depth", "2"],
    ["graph", "--n", "2", "--realization", "nope", "--depth", "2"],
    ["graph", "--n", "2", "--realization", "wall1", "--depth", "-1"],
    ["verify"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_exit_code_constants():
    assert (EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN) == (0, 1, 2, 3)
