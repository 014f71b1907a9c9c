import json
import subprocess
import sys
from pathlib import Path

import pytest

from csl.cli import main, run
from csl.constructions import HurwitzRadonFamily
from csl.contact import verify_witness
from csl.dsl import parse_poly, parse_spec
from csl.psphere import PSphereSpec, lambda_extension

SPECS = Path(__file__).resolve().parent.parent / "specs"


def _json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("argv,code", [
    (["check", str(SPECS / "s3-quaternionic.spec"), "--property", "psphere"], 0),
    (["check", str(SPECS / "s3-quaternionic.spec")], 0),
    (["check", str(SPECS / "five-dim-pair.spec"), "--property", "psphere"], 1),
    (["check", str(SPECS / "inconclusive.spec"), "--property", "contact"], 2),
    (["check", str(SPECS / "malformed.spec"), "--property", "contact"], 3),
    (["check", str(SPECS / "missing.spec"), "--property", "contact"], 3),
    (["check", str(SPECS / "s3-quaternionic.spec"), "--property", "psphere", "--forms", "alpha,nope"], 3),
    (["check", str(SPECS / "torus-bundle.spec")], 0),
    (["obstruct", str(SPECS / "five-dim-pair.spec")], 1),
    (["obstruct", str(SPECS / "s3-quaternionic.spec")], 3),
    (["scan", str(SPECS / "t3-functions.spec")], 2),
    (["reeb", str(SPECS / "s3-quaternionic.spec"), "--form", "beta"], 0),
    (["verify", "no-such-example"], 3),
    (["verify", "r5-pair"], 0),
    (["rho", "16"], 0),
    (["rho", "0"], 3),
    (["frobnicate"], 3),
])
def test_exit_codes(argv, code):
    assert run(argv)["exit_code"] == code


def test_rho_prints_the_number(capsys):
    assert main(["rho", "16"]) == 0
    assert capsys.readouterr().out.strip() == "8"


def test_refutation_report_can_be_rechecked(capsys):
    code, rep = _json(capsys, ["check", str(SPECS / "five-dim-pair.spec"), "--property", "psphere"])
    assert code == 1
    detail = rep["result"]["checks"][0]["detail"]
    sf = parse_spec((SPECS / "five-dim-pair.spec").read_text())
    ext = lambda_extension(PSphereSpec(sf.chart, tuple(f for _, f in sf.forms)))
    coef = parse_poly(ext.chart, detail["data"]["coefficient"])
    assert verify_witness(coef, ext.chart, detail["witness"])


def test_check_against_expectations(capsys):
    code, rep = _json(capsys, ["check", str(SPECS / "five-dim-pair.spec")])
    assert code == 0
    assert [c["status"] for c in rep["result"]["checks"]] == ["reproduced", "reproduced"]


def test_hr_emits_a_family(tmp_path, capsys):
    out = tmp_path / "hr8.json"
    code, rep = _json(capsys, ["hr", "8", "--emit", str(out)])
    assert code == 0 and rep["result"]["count"] == 7
    fam = HurwitzRadonFamily.from_json(out.read_text())
    assert fam.m == 8 and len(fam.matrices) == 7


def test_text_output_is_rendered(capsys):
    assert main(["verify", "t3-circle(2)"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("verify t3-circle(2): exit 0")
    assert "status: reproduced" in out


def test_input_errors_go_to_stderr(capsys):
    assert main(["check", str(SPECS / "malformed.spec"), "--property", "contact"]) == 3
    err = capsys.readouterr().err
    assert "line 3" in err and "degree mismatch" in err


def test_bad_thread_setting_is_an_input_error(monkeypatch):
    monkeypatch.setenv("CSL_THREADS", "zero")
    assert run(["verify", "--all"])["exit_code"] == 3


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "csl.cli", "rho", "12"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "3"
