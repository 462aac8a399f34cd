import json

import pytest

from echelons.cli import run


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["gabrielov", "echelon", "--prec", "8", "--out", "gab.json"]) == 0
    (tmp_path / "z.json").write_text(json.dumps({"vars": ["x", "y", "z"], "prec": 8, "terms": [{"e": [0, 0, 1], "c": "1"}]}))
    assert run(["gabrielov", "gk", "--k", "2", "--prec", "8", "--json", "--out", "g2.json"]) == 0
    return tmp_path


def test_qtable(capsys):
    assert run(["gabrielov", "qtable", "--kmax", "5"]) == 0
    out = capsys.readouterr().out
    for c in ("1/12", "1/720", "1/100800", "1/25401600"):
        assert c in out


def test_member(workdir, capsys):
    assert run(["member", "--echelon", "gab.json", "--input", "z.json", "--degree", "4"]) == 0
    assert capsys.readouterr().out == "false\n"
    assert run(["member", "--echelon", "gab.json", "--input", "g2.json", "--degree", "6"]) == 0
    assert capsys.readouterr().out == "true\n"
    assert run(["member", "--echelon", "gab.json", "--input", "g2.json", "--degree", "6", "--oracle"]) == 0
    assert capsys.readouterr().out == "true\n"
    assert run(["member", "--echelon", "gab.json", "--input", "g2.json", "--degree", "8"]) == 3
    assert capsys.readouterr().out == "indeterminate\n"


def test_divide_and_determinism(workdir, capsys):
    assert run(["divide", "--echelon", "gab.json", "--input", "g2.json", "--out", "a.json"]) == 0
    assert run(["divide", "--echelon", "gab.json", "--input", "g2.json", "--out", "b.json"]) == 0
    a = (workdir / "a.json").read_bytes()
    assert a == (workdir / "b.json").read_bytes()
    doc = json.loads(a)
    # x^2 z^2 is not covered by f, g, h, so g_2 is its own remainder
    assert doc["remainder"]["terms"] == json.loads((workdir / "g2.json").read_text())["terms"]
    assert doc["min_witness"] is None
    assert run(["divide", "--echelon", "gab.json", "--input", "g2.json"]) == 0
    assert capsys.readouterr().out.encode() == a


def test_stdbasis(workdir):
    args = ["stdbasis", "--echelon", "gab.json", "--target-monomial", "2,0,2", "--reduce", "--out", "sb.json", "--trace", "tr.json"]
    assert run(args) == 0
    doc = json.loads((workdir / "sb.json").read_text())
    assert doc["status"] == "covered" and doc["covering_element"] == 3
    trace = json.loads((workdir / "tr.json").read_text())["trace"]
    assert trace[0]["pair"] == [0, 1] and trace[0]["outcome"] == "inadmissible"
    assert run(["stdbasis", "--echelon", "gab.json", "--degree-cap", "8", "--max-rounds", "1", "--out", "x.json"]) == 3


def test_relations(workdir, capsys):
    assert run(["relations", "--echelon", "gab.json", "--degree", "6", "--multiplier-degree", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kernel_dim"] == 0 and doc["min_order"] is None


def test_witness_json_round_trip(tmp_path, capsys):
    assert run(["gabrielov", "witness", "--kmax", "5", "--prec", "10"]) == 0
    out = capsys.readouterr()
    doc = json.loads(out.out)
    assert doc["rows"][1]["r_k"] == "720" and doc["verdict"]["rays_equal_r_k"]
    assert "r_(k+1)/r_k" in out.err
    assert run(["gabrielov", "witness", "--kmax", "5", "--prec", "10", "--out", str(tmp_path / "w.json")]) == 0
    assert json.loads((tmp_path / "w.json").read_text()) == doc


def test_other_gabrielov_commands(capsys):
    assert run(["gabrielov", "gk", "--k", "5", "--prec", "14", "--algorithmic"]) == 0
    assert "7/264*x^5z^8" in capsys.readouterr().out
    assert run(["gabrielov", "abc", "--k", "3", "--prec", "10"]) == 0
    assert "a_3 = -x^2*y" in capsys.readouterr().out
    assert run(["gabrielov", "e", "--prec", "6", "--original"]) == 0
    assert json.loads(capsys.readouterr().out)["prec"] == 6


def test_usage_and_domain_errors(workdir, capsys):
    assert run(["bogus"]) == 2
    assert run(["member", "--echelon", "gab.json", "--input", "z.json", "--degree", "4", "--frob"]) == 2
    assert run(["stdbasis", "--echelon", "gab.json", "--target-monomial", "2,0"]) == 2
    (workdir / "bad.json").write_text('{"vars": ["x"], "prec": 2, "terms": [{"e": [1], "c": "0.5"}]}')
    assert run(["divide", "--echelon", "gab.json", "--input", "bad.json"]) == 1
    assert "terms/0/c" in capsys.readouterr().err
    assert run(["gabrielov", "gk", "--k", "3", "--prec", "4"]) == 1
    assert run(["member", "--echelon", "missing.json", "--input", "z.json", "--degree", "4"]) == 1


def test_verify_lists_every_criterion(capsys):
    code = run(["verify"])
    lines = capsys.readouterr().out.splitlines()
    marks = [ln for ln in lines if ln.startswith("[PASS]") or ln.startswith("[FAIL]")]
    assert len(marks) == 13
    assert code == (0 if all(m.startswith("[PASS]") for m in marks) else 1)
