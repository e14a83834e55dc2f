import io as _io
import json
from pathlib import Path

import pytest

from ainfty.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(*argv):
    buf = _io.StringIO()
    code = main([str(a) for a in argv], stream=buf)
    text = buf.getvalue()
    summary = json.loads(text.split("--- summary ---\n")[1]) if "--- summary ---" in text else None
    return code, text, summary


def test_counterexample_command():
    code, text, summary = run("counterexample", "--nmax", 6)
    assert code == 0 and summary["ok"]
    assert text.count("PASS") >= 5


def test_check_cat_on_injected_m3_names_the_instance():
    code, text, summary = run("check-cat", FIXTURES / "corrupt" / "dual2_m3.json")
    assert code == 1
    assert summary["info"]["first_failure"]["n"] == "3"
    assert "(e1, e1, e1)" in text


@pytest.mark.parametrize("name", ["unknown_key.json", "truncated.json", "noncanonical_scalar.json"])
def test_bad_documents_exit_2(name, capsys):
    code, _, _ = run("check-cat", FIXTURES / "corrupt" / name)
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_wrong_kind_and_missing_file_exit_2():
    assert run("check-fun", FIXTURES / "zoo" / "dual2.json")[0] == 2
    assert run("check-cat", FIXTURES / "nope.json")[0] == 2
    assert run("frobnicate")[0] == 2


@pytest.mark.parametrize("argv", [
    ["check-cat", FIXTURES / "zoo" / "dual2.json", "--nmax", 6],
    ["check-fun", FIXTURES / "counterexample" / "F2.json", "--nmax", 5],
    ["cohomology", FIXTURES / "zoo" / "cone.json"],
    ["bar", FIXTURES / "zoo" / "dual2.json", "--weight", 3],
    ["cobar", FIXTURES / "zoo" / "dual.json", "--weight", 3],
    ["compose", FIXTURES / "counterexample" / "J1.json", FIXTURES / "counterexample" / "F2.json"],
    ["rectify", FIXTURES / "zoo" / "interval.json"],
    ["strictify", FIXTURES / "zoo" / "ground.json"],
    ["solve-n", FIXTURES / "zoo" / "interval.json", FIXTURES / "zoo" / "ground.json"],
    ["psi", FIXTURES / "zoo" / "interval.json", FIXTURES / "zoo" / "ground.json",
     FIXTURES / "tensor-unit" / "tensor.json", FIXTURES / "tensor-unit" / "f_identity.json"],
])
def test_commands_pass(argv):
    code, text, summary = run(*argv)
    assert code == 0, text
    assert summary["ok"]


def test_reports_are_deterministic():
    a = run("cohomology", FIXTURES / "zoo" / "cone.json")[1]
    b = run("cohomology", FIXTURES / "zoo" / "cone.json")[1]
    assert a == b


def test_jobs_flag():
    code, _, summary = run("--jobs", 2, "check-cat", FIXTURES / "zoo" / "dual.json", "--nmax", 5)
    assert code == 0 and summary["ok"]


def test_compose_writes_output(tmp_path):
    out = tmp_path / "h.json"
    code, _, _ = run("compose", FIXTURES / "counterexample" / "J2.json", FIXTURES / "counterexample" / "F1.json",
                     "--out", out)
    assert code == 0
    assert run("check-fun", out)[0] == 0
