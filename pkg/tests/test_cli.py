import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from rqmathieu.cli import load_schema, main
from rqmathieu.reference import Q_MINUS, Q_PLUS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_zeros_by_order_reproduces_reference_rows(capsys):
    code, out, _ = run(capsys, "zeros", "--mu", "0.7", "--family", "+", "--by", "order", "--m-max", "8",
                       "--k", "10", "--digits", "6")
    assert code == 0
    r = rows(out)
    assert r[0] == ["n", "q", "omega"]
    assert r[1] == ["1", "2.21929", "0.297946"]
    assert r[8] == ["8", "24.0454", "0.980723"]
    for n in range(1, 9):
        assert float(r[n][1]) == pytest.approx(Q_PLUS[n - 1], rel=1e-5)


def test_zeros_minus_family(capsys):
    code, out, _ = run(capsys, "zeros", "--mu", "0.7", "--family", "minus", "--by", "order", "--m-max", "3")
    assert code == 0
    got = [float(r[1]) for r in rows(out)[1:]]
    assert np.allclose(got, Q_MINUS[:3], rtol=1e-5)


def test_zeros_by_index(capsys):
    code, out, _ = run(capsys, "zeros", "--mu", "0.7", "--family", "+", "--n", "0", "--m-max", "2", "--digits", "6")
    assert code == 0
    r = rows(out)
    assert r[0] == ["m", "q"] and r[1] == ["1", "1.04553"] and r[2] == ["2", "6.3442"]


@pytest.mark.parametrize("argv,code", [
    (["zeros", "--mu", "0.7", "--family", "-", "--n", "0", "--m-max", "2"], 2),
    (["zeros", "--mu", "1.2", "--family", "+", "--m-max", "2"], 2),
    (["zeros", "--mu", "0.7", "--family", "x", "--m-max", "2"], 2),
    (["zeros", "--mu", "0.7", "--family", "+", "--m-max", "0"], 2),
    (["zeros", "--mu", "0.7", "--family", "+", "--m-max", "2", "--digits", "0"], 2),
    (["eval", "--family", "+", "--n", "1", "--lambda", "1.5", "--grid-xi", "1"], 2),
    (["eval", "--family", "+", "--n", "1"], 2),
    (["gram", "--mu", "0.5", "--n-max", "0", "--m-max", "0"], 2),
    (["wave", "--config", "/nonexistent/cfg.json", "--out-prefix", "x"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_eval_grid(capsys):
    code, out, _ = run(capsys, "eval", "--family", "+", "--n", "2", "--lambda", "1.5")
    assert code == 0
    r = rows(out)
    assert r[0] == ["xi", "eta", "x", "y", "sc", "i", "j"]
    data = np.array(r[1:], dtype=float)
    assert data.shape == (60 * 120, 7)
    assert np.all(np.isfinite(data))


def test_eval_zero_boundary_mode(capsys):
    code, out, _ = run(capsys, "eval", "--family", "-", "--n", "1", "--m", "1", "--mu", "0.6",
                       "--grid-xi", "5", "--grid-eta", "8")
    assert code == 0
    data = np.array(rows(out)[1:], dtype=float)
    assert data.shape == (40, 7)
    assert np.hypot(data[:, 2], data[:, 3]).max() <= 1 + 1e-12


def test_gram_report_validates(capsys, tmp_path):
    out = tmp_path / "gram.json"
    code, _, _ = run(capsys, "gram", "--mu", "0.5", "--n-max", "1", "--m-max", "2", "--disk", "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, load_schema("gram_report"))
    assert rep["max_offdiag_normalized"] < 1e-8
    assert rep["refinement_change"] < 1e-8
    assert rep["disk"]["supported"] == "squared"


def test_gram_gate(capsys):
    # far too coarse: the refinement gate must trip
    code, _, err = run(capsys, "gram", "--mu", "0.5", "--n-max", "2", "--m-max", "2",
                       "--order-xi", "4", "--order-eta", "8")
    assert code == 3 and "not converged" in err


def _write_config(tmp_path, cfg):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return str(p)


def test_wave_outputs(capsys, tmp_path):
    cfg = _write_config(tmp_path, {"mu0": 0.7, "K": 10, "terms": [
        {"family": "+", "n": 1, "m": 1, "a": 1.0}], "grid": {"xi": 6, "eta": 10}})
    prefix = str(tmp_path / "run")
    code, _, _ = run(capsys, "wave", "--config", cfg, "--times", "0", "1", "--out-prefix", prefix)
    assert code == 0
    sol = json.loads((tmp_path / "run_solution.json").read_text())
    jsonschema.validate(sol, load_schema("solution"))
    t0 = np.array(rows((tmp_path / "run_t0.csv").read_text())[1:], dtype=float)
    t1 = np.array(rows((tmp_path / "run_t1.csv").read_text())[1:], dtype=float)
    assert t0.shape == (60, 7)
    w = sol["terms"][0]["omega"]
    big = np.abs(t0[:, 4]) > 1e-3
    assert np.abs(t1[big, 4] / t0[big, 4] - math.exp(w)).max() < 1e-12


def test_wave_initial_csv(capsys, tmp_path):
    from rqmathieu.geometry import EllipseSpec, make_grid
    from rqmathieu.rqm import ZeroBoundaryFunction

    grid = make_grid(EllipseSpec.from_mu(0.7), 24, 48)
    z = ZeroBoundaryFunction("+", 1, 1, 0.7)
    v = 0.5 * z.scalar(grid.xi, grid.eta)
    table = np.column_stack([grid.xi.ravel(), grid.eta.ravel(), v.ravel()])
    np.savetxt(tmp_path / "v0.csv", table, delimiter=",", header="xi,eta,value", comments="", fmt="%.17g")
    cfg = _write_config(tmp_path, {"mu0": 0.7, "K": 10, "initial": {"csv": "v0.csv", "budget": [2, 1],
                                                                     "orders": [24, 48]}})
    code, _, _ = run(capsys, "wave", "--config", cfg, "--grid-xi", "3", "--grid-eta", "4",
                     "--out-prefix", str(tmp_path / "w"))
    assert code == 0
    sol = json.loads((tmp_path / "w_solution.json").read_text())
    coeff = {(t["family"], t["n"], t["m"]): t["a"] for t in sol["terms"]}
    assert coeff[("+", 1, 1)] == pytest.approx(0.5, abs=1e-10)
    assert max(abs(a) for k, a in coeff.items() if k != ("+", 1, 1)) < 1e-10


def test_wave_config_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "wave", "--config", str(bad), "--out-prefix", str(tmp_path / "x"))[0] == 1
    cfg = _write_config(tmp_path, {"mu0": 0.7, "K": 10})
    assert run(capsys, "wave", "--config", cfg, "--out-prefix", str(tmp_path / "x"))[0] == 1
    cfg = _write_config(tmp_path, {"mu0": 0.7, "K": 10, "terms": []})
    assert run(capsys, "wave", "--config", cfg, "--times", "-1", "--out-prefix", str(tmp_path / "x"))[0] == 2


def test_cache_is_coherent(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("RQMATHIEU_CACHE_DIR", str(tmp_path / "c"))
    argv = ["zeros", "--mu", "0.55", "--family", "-", "--n", "2", "--m-max", "3"]
    cold = run(capsys, *argv)
    cache = json.loads((tmp_path / "c" / "qzeros.json").read_text())
    assert len(cache) >= 3
    warm = run(capsys, *argv)
    uncached = run(capsys, "--no-cache", *argv)
    assert cold == warm == uncached


def test_deterministic_with_threads(capsys, monkeypatch):
    argv = ["--no-cache", "zeros", "--mu", "0.65", "--family", "+", "--by", "order", "--m-max", "6"]
    monkeypatch.setenv("RQMATHIEU_THREADS", "1")
    a = run(capsys, *argv)
    monkeypatch.setenv("RQMATHIEU_THREADS", "4")
    b = run(capsys, *argv)
    assert a == b
    monkeypatch.setenv("RQMATHIEU_THREADS", "many")
    assert run(capsys, *argv)[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "rqmathieu", "zeros", "--mu", "0.7", "--family", "+",
                           "--by", "order", "--m-max", "1", "--digits", "6"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "1,2.21929"
