from __future__ import annotations

import json
import shutil

import pytest

from twocat.cli import main
from twocat.formats import bundled_path


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "zz.dims").write_text("selfinjective: true\n2 1\n1 2\n")
    return tmp_path


def test_validate_bundled(capsys):
    assert main(["validate", "a2-soergel.tbl"]) == 0
    assert "PASS  table-valid" in capsys.readouterr().out


def test_validate_corrupted(work, capsys):
    text = bundled_path("a2-soergel.tbl").read_text().replace("st * ts = 2 sts + 2 s", "st * ts = sts")
    (work / "bad.tbl").write_text(text)
    assert main(["--json", "validate", "bad.tbl"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["schema"] == 1 and rep["results"][0]["status"] == "fail"
    assert any(v["kind"] == "associativity" for v in rep["results"][0]["witness"])


def test_parse_error_exit_code(work, capsys):
    (work / "broken.tbl").write_text("objects: i\ngens: e:i->i\nid i = e\ne * e = e\ne * e = e\n")
    assert main(["validate", "broken.tbl"]) == 2
    assert "line 5" in capsys.readouterr().err


def test_missing_file_and_usage(capsys):
    assert main(["validate", "nope.tbl"]) == 2
    assert main(["bogus"]) == 2
    assert main(["goodness", "b2-soergel.tbl", "--cell", "s"]) == 2


def test_cells_and_hasse(capsys):
    assert main(["cells", "a2-soergel.tbl", "--kind", "left"]) == 0
    out = capsys.readouterr().out
    assert "{s, ts}" in out and "{t, st}" in out
    assert main(["hasse", "b2-soergel.tbl"]) == 0


def test_goodness(capsys):
    assert main(["goodness", "b2-soergel.tbl", "--cell", "s", "--witness", "b2-witness.json"]) == 0
    assert "(8+4*T)" in capsys.readouterr().out
    assert main(["goodness", "i2-5-soergel.tbl", "--cell", "s", "--witness", "i2-5-witness.json"]) == 0
    assert main(["goodness", "i2-5-soergel.tbl", "--cell", "s", "--search", "--strategies", "ones"]) == 1


def test_diagram_dot(work, capsys):
    dot = work / "a2.dot"
    assert main(["--dot", str(dot), "diagram", "a2-soergel.tbl", "--principal"]) == 0
    golden = (bundled_path("a2-soergel.tbl").parents[3] / "tests" / "golden" / "a2-principal.dot")
    if golden.exists():
        assert dot.read_text() == golden.read_text()
    assert "rankdir=BT" in dot.read_text()


def test_build_and_certificates(work, capsys):
    assert main(["build", "ca", "--dims", "zz.dims", "--out", "zz"]) == 0
    assert (work / "zz.tbl").exists() and (work / "zz.rep").exists() and (work / "zz-id.rep").exists()
    assert main(["validate", "zz.tbl"]) == 0
    assert main(["apex", "zz.rep"]) == 0
    capsys.readouterr()
    assert main(["--json", "dext", "self", "zz.rep"]) == 0
    cert = json.loads(capsys.readouterr().out)["certificates"][0]
    assert cert["kind"] == "self-extension"
    (work / "cert.json").write_text(json.dumps(cert))
    assert main(["dext", "recheck", "cert.json", "--table", "zz.tbl"]) == 0
    cert["witness"]["a"] = {"1": "99"}
    (work / "bad.json").write_text(json.dumps(cert))
    assert main(["dext", "recheck", "bad.json", "--table", "zz.tbl"]) == 1
    assert main(["dext", "cross", "zz-id.rep", "--quotient", "zz.rep"]) == 0
    assert main(["dext", "cross", "zz.rep", "--quotient", "zz-id.rep"]) == 1


def test_build_sig_and_filters(work, capsys):
    assert main(["build", "sig", "--dims", "zz.dims", "--dimvec", "1,0", "--out", "sig"]) == 0
    assert main(["ses", "sig.rep", "--sub", "P1,P2"]) == 0
    assert "theta = {F11, F21}" in capsys.readouterr().out
    assert main(["dext", "filters", "sig.rep", "--sub", "P1,P2"]) == 0
    assert main(["ses", "sig.rep", "--sub", "M"]) == 1  # not closed under the action


def test_build_bipartite_and_da(work):
    shutil.copy(bundled_path("example-graph.gr"), work / "g.gr")
    assert main(["build", "bipartite", "--dims", "zz.dims", "--graph", "g.gr", "--out", "bp"]) == 0
    assert main(["diagram", "bp.rep"]) == 0
    assert main(["build", "da", "--dims", "zz.dims"]) == 0


def test_verify_commands(capsys):
    assert main(["verify-a2", "--a", "1", "--b", "T"]) == 0
    assert main(["verify-a2", "--a", "1", "--b", "1-T"]) == 0
    assert main(["verify-a2", "--a", "1", "--b", "1"]) == 1
    assert main(["verify-a2", "--a", "1", "--b", "T*"]) == 2
    assert main(["verify-zigzag", "--n", "2"]) == 0


def test_run_suite_smoke(capsys):
    assert main(["run-suite", "smoke"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["PASS  b2-goodness", "PASS  i2-5-goodness", "PASS  cell-recovery", "PASS  signature-extensions"]


def test_run_suite_detects_corrupted_b2(work, capsys):
    text = bundled_path("b2-soergel.tbl").read_text()
    # flip one multiplicity
    (work / "b2-soergel.tbl").write_text(text.replace("s * ts = s + sts\n", "s * ts = s + 2 sts\n"))
    assert main(["--json", "run-suite", "smoke", "--data-dir", str(work)]) == 1
    rep = json.loads(capsys.readouterr().out)
    b2 = rep["results"][0]
    assert b2["check"] == "b2-goodness" and b2["status"] == "fail"
    assert b2["witness"]["residual"] == {"sts": "T"}
