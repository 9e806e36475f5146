import json

import jsonschema
import pytest

from rqmathieu import verify
from rqmathieu.cli import load_schema, main


def test_fast_level_passes():
    rep = verify.run("fast")
    jsonschema.validate(rep, load_schema("verify_report"))
    assert rep["passed"], [s for s in rep["suites"] if not s["passed"]]
    assert {s["name"] for s in rep["suites"]} == set(verify.SUITES)


@pytest.mark.slow
def test_full_level_passes():
    rep = verify.run("full")
    assert rep["passed"], [s for s in rep["suites"] if not s["passed"]]


def test_injected_fault_is_detected(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--inject-fault", "characteristic", "--suite", "ode_residual",
                 "--suite", "bessel", "--out", str(out)])
    _, err = capsys.readouterr()
    assert code == 4
    assert "ode_residual" in err
    rep = json.loads(out.read_text())
    by_name = {s["name"]: s for s in rep["suites"]}
    assert not by_name["ode_residual"]["passed"]
    assert by_name["bessel"]["passed"]
    assert rep["fault"] == "characteristic"


def test_fault_does_not_leak():
    verify.run("fast", suites=["ode_residual"], fault="characteristic")
    assert verify.run("fast", suites=["ode_residual"])["passed"]


def test_unknown_suite(capsys):
    assert main(["verify", "--suite", "nope"]) == 2
