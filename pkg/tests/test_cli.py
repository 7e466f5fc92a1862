import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from graphop.report import REPORT_SCHEMA

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(*args, env=None):
    full_env = {**os.environ, **(env or {})}
    return subprocess.run([sys.executable, "-m", "graphop", *map(str, args)], capture_output=True, text=True,
                          env=full_env)


def ok(*args, **kw):
    proc = run(*args, **kw)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def test_classify_json_self_adjoint_fixture():
    doc = json.loads(ok("classify", "-g", FIX / "fan.gg", "-o", FIX / "fan_selfadjoint.gop", "--json",
                        "--truncation", "2"))
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["summary"]["selfAdjoint"] == {"paper": "yes", "oracle": "yes"}
    assert [lv["n"] for lv in doc["spectralTrace"]] == [0, 1, 2]


def test_classify_json_unitary_discrepancy():
    doc = json.loads(ok("classify", "-g", FIX / "path4.gg", "-o", FIX / "path4_unimodular.gop", "--json"))
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert "unitary" in {d["property"] for d in doc["discrepancies"]}


def test_classify_is_deterministic():
    args = ("classify", "-g", FIX / "path4.gg", "-o", FIX / "path4_unimodular.gop", "--json")
    assert ok(*args) == ok(*args)


def test_mode_flags():
    paper = json.loads(ok("classify", "-g", FIX / "graph_c.gg", "-o", FIX / "c_parallel.gop", "--json", "--mode", "paper"))
    assert {v["mode"] for v in paper["verdicts"]} == {"paper", "oracle"}
    assert "numeric" not in paper["summary"]["hyponormal"]
    oracle = json.loads(ok("classify", "-g", FIX / "graph_c.gg", "-o", FIX / "c_parallel.gop", "--json", "--mode", "oracle"))
    assert {v["mode"] for v in oracle["verdicts"]} == {"oracle", "numeric"}


def test_text_report():
    out = ok("classify", "-g", FIX / "path4.gg", "-o", FIX / "path4_unimodular.gop", "--truncation", "1")
    assert "DISCREPANCY unitary: paper=yes oracle=no" in out


def test_product_adjoint_commutator():
    c = FIX / "graph_c.gg"
    assert ok("product", "-g", c, "-o", FIX / "e1_inv.gop", "-o", FIX / "e1.gop") == "term 1 0 @v2\n"
    assert ok("adjoint", "-g", c, "-o", FIX / "e1.gop") == "term 1 0 e1^-1\n"
    assert ok("commutator", "-g", c, "-o", FIX / "c_e1_pair.gop") == "term 3 0 @v1\nterm -3 0 @v2\n"


def test_adjoint_of_imaginary_term(tmp_path):
    p = tmp_path / "t.gop"
    p.write_text("term 0 1 e1\n")
    assert ok("adjoint", "-g", FIX / "graph_c.gg", "-o", p) == "term 0 -1 e1^-1\n"


def test_matrix_csv():
    out = ok("matrix", "-g", FIX / "graph_c.gg", "-o", FIX / "e1.gop", "--ball", "1", "--csv")
    rows = [line.split(",") for line in out.splitlines()]
    assert rows[0] == ["", "@v1", "@v2", "e1", "e1^-1", "e2", "e2^-1"]
    cells = [c for row in rows[1:] for c in row[1:]]
    assert len(cells) == 36 and cells.count("1+0i") == 2 and cells.count("0+0i") == 34


def test_spectrum_csv():
    out = ok("spectrum", "-g", FIX / "graph_c.gg", "-o", FIX / "c_e1_pair.gop", "--ball-max", "2")
    lines = out.splitlines()
    assert lines[0] == "n,dim,lambda_min"
    assert [float(line.split(",")[2]) for line in lines[1:]] == pytest.approx([-3, -3, -3], abs=1e-12)


def test_linear_compress_sym():
    out = ok("linear-compress", "--kind", "sym", "--j", "2", "--size", "4")
    rows = [[complex(c.replace("i", "j")) for c in line.split(",")[1:]] for line in out.splitlines()[1:]]
    assert rows == [[0, 0, 0, 0], [0, 2, 1, 0], [0, 1, 0, 0], [0, 0, 0, 0]]


def test_free_classify_json():
    doc = json.loads(ok("free", "classify", "-N", "2", "-o", FIX / "ua_uab.fop", "--json", "--truncation", "1"))
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["freeGroup"]["generators"] == ["a", "b"]
    assert any(d["property"] == "normal" and d["paper"] == "yes" and d["oracle"] == "no"
               for d in doc["discrepancies"])


@pytest.mark.parametrize("args", [
    ("classify", "-g", "missing.gg", "-o", "missing.gop"),
    ("classify", "-g", FIX / "graph_c.gg", "-o", FIX / "path4_unimodular.gop"),
    ("classify", "-g", FIX / "graph_c.gg", "-o", FIX / "c_parallel.gop", "--tol", "-1"),
    ("linear-compress", "--kind", "edge", "--j", "4", "--size", "4"),
    ("product", "-g", FIX / "graph_c.gg", "-o", FIX / "e1.gop"),
    ("bogus",),
    ("free", "classify", "-N", "0", "-o", FIX / "ua_uab.fop"),
])
def test_errors_exit_1_without_stdout(args):
    proc = run(*args)
    assert proc.returncode == 1
    assert proc.stdout == ""
    assert proc.stderr.startswith("graphop:")


def test_bad_operator_line_reports_file_and_line(tmp_path):
    p = tmp_path / "bad.gop"
    p.write_text("term 1 0 e1\nterm 1 0 e1 e1\n")
    proc = run("adjoint", "-g", FIX / "graph_c.gg", "-o", p)
    assert proc.returncode == 1
    assert "bad.gop" in proc.stderr and "line 2" in proc.stderr


def test_graphop_tol_environment():
    proc = run("classify", "-g", FIX / "graph_c.gg", "-o", FIX / "c_parallel.gop", env={"GRAPHOP_TOL": "abc"})
    assert proc.returncode == 1
    assert ok("classify", "-g", FIX / "graph_c.gg", "-o", FIX / "c_parallel.gop", env={"GRAPHOP_TOL": "1e-6"})
