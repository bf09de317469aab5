import csv
import io
import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from idealaudit import cli
from idealaudit.report import canonical, dumps, write_atomic

SESSION = """\
ring R = QQ[x,y,z]/(x^2+y^5+z^5) dim 2
ideal I = (x, y^3, y^2*z, y*z^2, z^3) in R
ideal Q = (x, z^3) in R
"""

PLANE = """\
ring S = QQ[x,y] dim 2
ideal A = (x^2, y^2) in S
ideal B = (x^2, x*y, y^2) in S
ideal C = (x, y^7) in S
ring P = GF(5)[x,y] dim 2
ideal J = (x^2, y^3) in P
ideal M = (x, y) in P
"""


@pytest.fixture
def session(tmp_path):
    path = tmp_path / "s.ses"
    path.write_text(SESSION)
    return str(path)


@pytest.fixture
def plane(tmp_path):
    path = tmp_path / "p.ses"
    path.write_text(PLANE)
    return str(path)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_audit_single_ideal(session, tmp_path):
    target = tmp_path / "out.json"
    code, out, err = run("audit", session, "--ideal", "I", "--json", str(target))
    assert code == 0 and out == "" and err == ""
    doc = json.loads(target.read_text())
    A = next(v for v in doc["inequalities"] if v["name"] == "A")
    assert A["status"] == "violated" and A["lhs"] == 12 and A["rhs"] == 15
    assert doc["invariants"]["mu"] == 5 and doc["schema_version"] == "1.0"


def test_audit_is_byte_identical(session, tmp_path):
    paths = [tmp_path / f"run{i}.json" for i in range(2)]
    for p in paths:
        assert run("audit", session, "--ideal", "I", "--seed", "3", "--json", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_audit_family_and_csv(plane, tmp_path):
    target = tmp_path / "rows.csv"
    code, out, _ = run("audit", plane, "--ideal", "A", "--ideal", "B", "--check", "A,E", "--csv", str(target))
    assert code == 0
    doc = json.loads(out)
    # (x^2, y^2) is not m-full: (mu - 1) ll = 3 < 4, a violation outside the hypotheses
    assert doc["count"] == 2 and doc["tallies"]["A"]["violated"] == 1
    assert doc["counterexamples"] == []
    rows = list(csv.DictReader(target.open()))
    assert [r["ideal"] for r in rows] == ["(x^2, y^2)", "(x^2, x*y, y^2)"]
    assert set(rows[0]) >= {"slack_A", "slack_E", "mu", "loewy"}
    assert rows[0]["m_full"] == "False"


def test_compute(plane):
    code, out, _ = run("compute", plane, "--ideal", "C")
    assert code == 0
    inv = json.loads(out)["results"][0]["invariants"]
    assert (inv["mu"], inv["loewy"], inv["ord"], inv["colength"], inv["e"]) == (2, 7, 1, 7, 7)


def test_enumerate_counts_and_check():
    code, out, _ = run("enumerate", "--vars", "2", "--max-colength", "3")
    assert code == 0 and json.loads(out)["count"] == 6
    code, out, _ = run("enumerate", "--vars", "2", "--max-colength", "12", "--check", "A,E")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 192
    assert doc["violations"] == {"A": 0, "E": 0}
    assert doc["counterexamples"] == []


def test_fthreshold(plane):
    code, out, _ = run("fthreshold", plane, "--ideal", "J", "--e-max", "2")
    doc = json.loads(out)
    assert code == 0
    assert doc["nu"]["0"] == 4 and doc["regular_closed_form"] == 5
    hm = next(c for c in doc["checks"] if c["name"] == "HMTW_dim2")
    assert hm["lhs"] == 6 and hm["rhs"] == "25/4" and hm["status"] == "holds"
    code, out, _ = run("fthreshold", plane, "--ideal", "M", "--e-max", "3")
    assert json.loads(out)["nu"] == {"0": 1, "1": 9, "2": 49, "3": 249}


def test_corpus_exit_zero():
    code, out, _ = run("corpus")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["diff"] == []


@pytest.mark.parametrize(
    "argv, kind",
    [
        (["enumerate", "--vars", "3", "--max-colength", "4"], "usage"),
        (["enumerate", "--max-colength", "99"], "usage"),
        (["audit"], "usage"),
        (["audit", "SESSION", "--check", "Q"], "usage"),
        (["audit", "SESSION", "--ideal", "Nope"], "input"),
        (["audit", "/nonexistent/file.ses"], "input"),
        (["fthreshold", "SESSION", "--ideal", "I"], "hypothesis"),
        (["frobnicate"], "usage"),
    ],
)
def test_error_paths(session, tmp_path, argv, kind):
    argv = [session if a == "SESSION" else a for a in argv]
    target = tmp_path / "never.json"
    code, out, err = run(*argv, "--json", str(target)) if argv[0] != "frobnicate" else run(*argv)
    assert code != 0
    assert out == ""
    assert json.loads(err)["error"] == kind
    assert not target.exists()
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")]


def test_parse_error_is_located(tmp_path):
    bad = tmp_path / "bad.ses"
    bad.write_text("ring R = QQ[x,y] dim 2\nideal I = (x, q) in R\n")
    code, _, err = run("compute", str(bad))
    doc = json.loads(err)
    assert code == 2 and doc["error"] == "parse" and (doc["line"], doc["column"]) == (2, 15)


def test_not_m_primary(tmp_path):
    bad = tmp_path / "line.ses"
    bad.write_text("ring R = QQ[x,y] dim 2\nideal I = (x) in R\n")
    code, _, err = run("compute", str(bad), "--truncation-cap", "12")
    assert code == 1 and json.loads(err)["error"] == "not_m_primary"
    assert "IDEAL_AUDIT_CAP" not in os.environ


def test_environment_cap(tmp_path, monkeypatch):
    bad = tmp_path / "line.ses"
    bad.write_text("ring R = QQ[x,y] dim 2\nideal I = (x) in R\n")
    monkeypatch.setenv("IDEAL_AUDIT_CAP", "8")
    code, _, err = run("compute", str(bad))
    assert code == 1 and "cap 8" in json.loads(err)["message"]


def test_console_entry_point(session):
    proc = subprocess.run(
        [sys.executable, "-m", "idealaudit", "audit", session, "--ideal", "I", "--check", "A"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["inequalities"][0]["status"] == "violated"


def test_canonical_values():
    assert canonical(Fraction(3, 4)) == "3/4"
    assert canonical(Fraction(4, 2)) == 2
    assert canonical(2**60) == str(2**60)
    assert canonical(-(2**53)) == str(-(2**53))
    with pytest.raises(TypeError):
        canonical(0.5)
    assert dumps({"b": 1, "a": [Fraction(1, 3)]}) == '{\n  "a": [\n    "1/3"\n  ],\n  "b": 1\n}\n'


def test_atomic_write_leaves_old_file_on_failure(tmp_path, monkeypatch):
    target = tmp_path / "doc.json"
    target.write_text("old")

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        write_atomic(str(target), "new")
    assert target.read_text() == "old"
    assert os.listdir(tmp_path) == ["doc.json"]
