import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qcousin.cli import main, run_manifest

DATA = Path(__file__).parent / "data"
VALID = sorted((DATA / "manifests").glob("*.qcm"))
MALFORMED = sorted((DATA / "malformed").glob("*.qcm"))
GOLDEN = DATA / "golden"

EXPECTED_EXIT = {
    "verify_l1_line": 1,
    "verify_product_counterexample": 1,
    "oracle_generic": 2,
}


def golden_path(path, text):
    suffix = ".csv" if not text.lstrip().startswith("{") else ".json"
    return GOLDEN / (path.stem + suffix)


def run(path, capsys, *extra):
    code = main(["--manifest", str(path), *extra])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_golden_and_determinism(path, capsys):
    code1, out1, _ = run(path, capsys)
    code2, out2, _ = run(path, capsys)
    assert code1 == code2 == EXPECTED_EXIT.get(path.stem, 0)
    assert out1 == out2
    if code1 == 2:
        return
    g = golden_path(path, out1)
    if os.environ.get("QCOUSIN_REGEN_GOLDEN"):
        g.parent.mkdir(exist_ok=True)
        g.write_text(out1, encoding="utf-8")
    assert out1 == g.read_text(encoding="utf-8")


@pytest.mark.parametrize("path", MALFORMED, ids=lambda p: p.stem)
def test_malformed_exit_two(path, capsys):
    code, out, err = run(path, capsys)
    assert code == 2 and out == ""
    assert "line" in err


def test_cousin_example(capsys):
    code, out, _ = run(DATA / "manifests" / "cousin_line.qcm", capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["results"]["levels"]["2"]["term_dims"] == [1, 3, 2]


def test_l1_witness(capsys):
    code, out, _ = run(DATA / "manifests" / "verify_l1_line.qcm", capsys)
    rep = json.loads(out)
    assert code == 1
    assert [f["witness"] for f in rep["findings"] if f["claim"] == "l1(3)"] == ["x2^-1*x1"]


def test_oracle_generic_q(capsys):
    code, out, err = run(DATA / "manifests" / "oracle_generic.qcm", capsys)
    assert code == 2 and "oracle supports q=1 only" in err


def test_defaults_recorded_and_no_timing(capsys):
    _, out, _ = run(DATA / "manifests" / "hilbert_minimal.qcm", capsys)
    rep = json.loads(out)
    assert rep["parameters"]["pole_max"] == 4
    assert rep["parameters"]["window"] == 2
    assert rep["parameters"]["semantics"] == "ideal"
    assert rep["engine"]["name"] == "qcousin" and rep["engine"]["version"]
    assert "timing" not in rep
    _, out, _ = run(DATA / "manifests" / "hilbert_minimal.qcm", capsys, "--timing")
    assert "timing" in json.loads(out)


def test_flags_and_env_overrides(capsys, monkeypatch):
    path = DATA / "manifests" / "cousin_line.qcm"
    monkeypatch.setenv("QCOUSIN_POLE_MAX", "3")
    _, out, _ = run(path, capsys)
    assert json.loads(out)["parameters"]["pole_max"] == 3
    _, out, _ = run(path, capsys, "--pole-max", "1")
    rep = json.loads(out)
    assert rep["parameters"]["pole_max"] == 1 and list(rep["results"]["levels"]) == ["1"]
    monkeypatch.setenv("QCOUSIN_SEMANTICS", "product")
    monkeypatch.setenv("QCOUSIN_FORMAT", "csv")
    _, out, _ = run(path, capsys)
    assert out.startswith("p,term_dims")
    monkeypatch.setenv("QCOUSIN_POLE_MAX", "many")
    code, _, err = run(path, capsys)
    assert code == 2 and "QCOUSIN_POLE_MAX" in err


def test_env_manifest_and_out(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("QCOUSIN_MANIFEST", str(DATA / "manifests" / "hilbert_minimal.qcm"))
    target = tmp_path / "report.json"
    assert main(["--out", str(target)]) == 0
    assert json.loads(target.read_text())["results"]["dims"] == [1, 2, 3, 4]


def test_missing_manifest(capsys, tmp_path):
    assert main([]) == 2
    assert main(["--manifest", str(tmp_path / "absent.qcm")]) == 2


def test_seed_changes_props_only_in_echo():
    path = DATA / "manifests" / "verify_ses.qcm"
    a, code_a = run_manifest(path, {"seed": 1})
    b, code_b = run_manifest(path, {"seed": 2})
    assert code_a == code_b == 0
    assert json.loads(a)["parameters"]["seed"] == 1 and json.loads(b)["parameters"]["seed"] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qcousin.cli", "--manifest", str(DATA / "manifests" / "hilbert_minimal.qcm"), "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[:2] == ["degree,dim", "0,1"]
