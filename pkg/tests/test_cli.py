import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from yangian import cli
from yangian.entanglement import LOG3_2

GOLDEN = Path(__file__).parent / "golden"
PARAMS = ["--mu", "2", "--nu", "-0.5", "--lambda", "2"]


def run_module(*args):
    return subprocess.run(
        [sys.executable, "-m", "yangian", *args], capture_output=True, check=False, timeout=60
    )


def run_inline(capsys, *args):
    code = cli.run(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt():
    assert cli.fmt(-0.0) == "0"
    assert cli.fmt(1 / 3) == "0.333333333333"
    assert cli.fmt(2.0) == "2"
    assert cli.jsonable({0.5: 1j}) == {"0.5": {"re": 0.0, "im": 1.0}}


def test_verify_su3_json(capsys):
    code, out, _ = run_inline(capsys, "verify", "su3", *PARAMS)
    assert code == 0
    doc = json.loads(out)
    assert doc["algebra"] == "su3"
    assert doc["params"] == {"mu": 2.0, "nu": -0.5, "lambda": 2.0, "xi": -1.5, "constraint_ok": True}
    assert doc["max_residual"] < 1e-12
    assert {"name", "residual"} <= set(doc["relations"][0])


def test_verify_su2_json(capsys):
    code, out, _ = run_inline(capsys, "verify", "su2", *PARAMS)
    assert code == 0
    assert json.loads(out)["max_residual"] < 1e-12


def test_spectrum(capsys):
    code, out, _ = run_inline(capsys, "spectrum", "i3", *PARAMS)
    doc = json.loads(out)
    assert code == 0
    got = sorted(r["re"] for r in doc["roots"])
    assert got == pytest.approx([-0.5] * 3 + [0.0] * 3 + [0.5] * 3, abs=1e-8)


def test_apply_qubit(capsys):
    code, out, _ = run_inline(capsys, "apply", "--operator", "J+", *PARAMS, "--alpha", "1", "--beta", "0")
    doc = json.loads(out)
    assert code == 0
    assert doc["entanglement_after"] == 0.8
    assert doc["annihilated"] is False


def test_apply_by_catalog_name_and_amps(capsys):
    code, out, _ = run_inline(capsys, "apply", "--operator", "P1", *PARAMS, "--amps", "0,0,0,1+0i")
    doc = json.loads(out)
    assert code == 0
    assert doc["annihilated"] is True
    assert doc["final_state"] is None


def test_apply_meson(capsys):
    code, out, _ = run_inline(
        capsys, "apply", "--operator", "Ubar-", *PARAMS, "--alpha1", "0.8", "--alpha2", "0.6"
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["channels"] == ["K⁰"]
    assert doc["entanglement_after"] == 0


def test_sweep_csv_schema(capsys):
    code, out, _ = run_inline(capsys, "sweep", "c1", "--lambda", "2")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["mu", "c1"]
    assert len(rows) == 200
    assert max(float(c) for _, c in rows[1:]) == pytest.approx(LOG3_2, abs=1e-4)


def test_sweep_json_reports_peaks(capsys):
    code, out, _ = run_inline(capsys, "sweep", "c1", "--lambda", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [round(p["mu"], 6) for p in doc["peaks"]] == [
        round(1 - 1 / math.sqrt(2), 6),
        round(1 + 1 / math.sqrt(2), 6),
    ]


def test_goldens(capsys):
    code, out, _ = run_inline(capsys, "sweep", "c1", "--lambda", "2", "--mu-min", "0.01", "--mu-max", "1.99", "--steps", "199")
    assert code == 0
    assert out == (GOLDEN / "sweep_c1_lambda2.csv").read_text(encoding="utf-8")
    code, out, _ = run_inline(capsys, "tables", *PARAMS, "--alpha1", "0.8", "--alpha2", "0.6")
    assert code == 0
    assert out == (GOLDEN / "tables_mu2.md").read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "su2", *PARAMS],
        ["verify", "su3", *PARAMS],
        ["sweep", "c1", "--lambda", "2", "--mu-min", "0.01", "--mu-max", "1.99", "--steps", "199"],
        ["tables", *PARAMS, "--alpha1", "0.8", "--alpha2", "0.6"],
    ],
)
def test_byte_identical_runs(capsys, args):
    first = run_inline(capsys, *args)
    second = run_inline(capsys, *args)
    assert first[0] == 0
    assert first == second
    assert first[1]


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "su2", "--mu", "1", "--nu", "-1", "--lambda", "2"],
        ["verify", "su2", "--mu", "abc", "--nu", "1", "--lambda", "2"],
        ["verify", "su2", "--nu", "1"],
        ["apply", "--operator", "J+", *PARAMS, "--alpha", "1", "--beta", "1"],
        ["apply", "--operator", "Wtilde+", *PARAMS, "--alpha1", "1", "--alpha2", "0"],
        ["apply", "--operator", "Ibar+", "--mu", "1", "--nu", "2", "--lambda", "0.7", "--alpha1", "1", "--alpha2", "0"],
        ["sweep", "c1", "--lambda", "2", "--steps", "1"],
        ["verify", "su3", *PARAMS, "--format", "csv"],
        ["bogus"],
    ],
)
def test_validation_exit_1(capsys, args):
    code, out, err = run_inline(capsys, *args)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_singular_tau_exit_2():
    result = run_module("verify", "su2", "--mu", "1", "--nu", "1", "--lambda", "2")
    assert result.returncode == 2
    assert result.stdout == b""
    assert b"singular" in result.stderr


def test_out_file_atomic(tmp_path, capsys):
    target = tmp_path / "t.md"
    code, out, _ = run_inline(capsys, "tables", *PARAMS, "--alpha1", "0.8", "--alpha2", "0.6", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == (GOLDEN / "tables_mu2.md").read_text(encoding="utf-8")

    bad = tmp_path / "bad.json"
    code, _, _ = run_inline(capsys, "verify", "su2", "--mu", "1", "--nu", "1", "--lambda", "2", "--out", str(bad))
    assert code == 2
    assert list(tmp_path.iterdir()) == [target]
