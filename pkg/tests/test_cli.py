import csv
import io
import json
import subprocess
import sys

import pytest

from pitool.cli import run
from pitool.resonance import ResidualFamily, residual


def call(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys):
    code, out, _ = call(["classify", "--mu", "2", "--tau", "1"], capsys)
    assert code == 0
    assert out == '{"region": "P1", "admissible": true}\n'


def test_kurasov(capsys):
    code, out, _ = call(["kurasov", "--gamma", "1", "--c", "0.4"], capsys)
    doc = json.loads(out)
    assert list(doc) == ["a1", "a2", "theta"]
    assert doc["a1"] == 5.0 and doc["a2"] == pytest.approx(-5 / 3, rel=1e-15) and doc["theta"] == 3.0
    code, out, _ = call(["kurasov", "--gamma", "1", "--c", "0.4", "--a2", "1"], capsys)
    assert list(json.loads(out)) == ["a1", "a2", "a3", "theta"]


def test_limit_transparent(capsys):
    code, out, _ = call(["limit", "--mu", "1.5", "--tau", "0.5", "--c", "0.4", "--a1", "-5", "--a2", "-5"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["variant"] == "Transparent" and doc["sign"] == -1
    assert list(doc) == ["variant", "sign", "residual", "family", "region"]


def test_limit_eta(capsys):
    argv = ["limit", "--mu", "1.5", "--tau", "0.5", "--c", "0.4", "--a1", "5", "--a2", "-1.6666666666666667"]
    _, out, _ = call(argv + ["--eta", "0.5"], capsys)
    doc = json.loads(out)
    assert doc["theta"] == pytest.approx(3.0) and doc["gamma"] == pytest.approx(1.0)


def test_deltaprime_kappa(capsys):
    _, out, _ = call(["deltaprime-kappa", "--a1", "-5", "--c", "0.4"], capsys)
    sols = json.loads(out)
    assert len(sols) == 2
    assert all(list(s)[:4] == ["a1", "a2", "a3", "kappa"] for s in sols)


def test_transmission(capsys):
    _, out, _ = call(["transmission", "--k", "1", "--eps", "1e-6", "--mu", "1.25", "--tau", "0.25",
                      "--c", "0.4", "--a1", "-5", "--a2", "-5"], capsys)
    doc = json.loads(out)
    assert doc["T"] + doc["R"] == pytest.approx(1.0, abs=1e-12)
    assert doc["T"] > 0.999


def test_sweep_csv_and_trailer(capsys):
    argv = ["sweep", "--mu", "1.25", "--tau", "0.25", "--c", "0.4", "--a1", "5", "--a2", "-1.6666666666666667",
            "--k", "1", "--eps-start", "1e-2", "--decades", "2", "--per-decade", "1"]
    code, out, _ = call(argv, capsys)
    lines = out.splitlines()
    assert lines[0] == "eps,m11,m12,m21,m22,d11,d12,d21,d22"
    assert len(lines) == 5 and lines[-1].startswith("# ")
    trailer = json.loads(lines[-1][2:])
    assert list(trailer) == ["verdict", "slopes"]
    rows = list(csv.reader(lines[1:-1]))
    assert [float(r[0]) for r in rows] == [1e-2, 1e-3, 1e-4]


def test_sweep_seba(capsys):
    argv = ["sweep", "--c", "1", "--a1", "1", "--a2", "2", "--a3", "-3", "--k", "1",
            "--eps-start", "1e-2", "--decades", "4", "--per-decade", "1", "--seba-sigma", "0.5"]
    code, out, _ = call(argv, capsys)
    assert code == 0
    assert json.loads(out.splitlines()[-1][2:])["verdict"] == "Converged"


def test_trace_roundtrip(capsys):
    argv = ["resonance", "trace", "--family", "F2", "--c", "0.4",
            "--xmin", "-6", "--xmax", "2", "--ymin", "-6", "--ymax", "2", "--grid", "128"]
    code, out, _ = call(argv, capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and list(rows[0]) == ["family", "c", "branch", "X", "Y", "a1", "a2", "residual"]
    fam = ResidualFamily("F2", 0.4)
    for r in rows:
        again = float(residual(fam, (float(r["a1"]), float(r["a2"]))))
        assert abs(again - float(r["residual"])) <= 1e-12
    assert {r["branch"] for r in rows} >= {"0", "1"}


def test_slice3(capsys):
    argv = ["resonance", "slice3", "--family", "L3", "--a3", "1",
            "--xmin", "-3", "--xmax", "3", "--ymin", "-3", "--ymax", "3", "--grid", "32"]
    code, out, _ = call(argv, capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["family", "c", "a3", "contour", "a1", "a2", "residual"]
    assert all(abs(float(r["a1"]) + float(r["a2"]) + 1) < 1e-9 for r in rows)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "c.json"
    code, out, _ = call(["-o", str(target), "classify", "--mu", "0.5", "--tau", "1"], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == {"region": "Q0", "admissible": True}


@pytest.mark.parametrize(
    "argv, code",
    [
        (["classify", "--mu", "1"], 2),
        (["frobnicate"], 2),
        (["classify", "--mu", "1", "--tau", "1", "--bogus"], 2),
        (["limit", "--mu", "3", "--tau", "1", "--c", "1", "--a1", "1", "--a2", "1"], 1),
        (["kurasov", "--gamma", "2", "--c", "0.4"], 1),
        (["kurasov", "--gamma", "1", "--c", "0.4", "--a2", "-5"], 1),
    ],
)
def test_errors(argv, code, capsys):
    got, out, err = call(argv, capsys)
    assert got == code
    assert out == ""
    assert err.strip() and err.strip().splitlines()[-1].startswith(("pitool", "usage"))
    if code == 1:
        assert len(err.strip().splitlines()) == 1


def test_console_script_is_deterministic():
    argv = [sys.executable, "-m", "pitool.cli", "resonance", "trace", "--family", "K2", "--c", "0.4",
            "--xmin", "-4", "--xmax", "2", "--ymin", "-4", "--ymax", "2", "--grid", "96"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"family,c,branch")
