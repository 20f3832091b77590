import json
import subprocess
import sys

import numpy as np
import pytest

from so7atlas import atlas7, cli, report
from so7atlas.groupkit import closure
from so7atlas.signedperm import to_matrix

REPORT_KEYS = {"id", "order", "case", "split", "irreducible", "transitive", "traces_integral", "clifford", "table1", "errors"}
CLIFFORD_KEYS = {"nfc", "fc_paper", "fc_orbit", "direct_classes", "orbits"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_list(capsys):
    code, out = run(capsys, "list")
    lines = out.out.splitlines()
    assert code == 0 and len(lines) == 24
    assert lines[0].split() == ["case1-psl27", "168", "case1"]
    code, out = run(capsys, "list", "--json")
    assert json.loads(out.out.splitlines()[-1]) == {"id": "case3-s7+neg", "order": 645120, "case": "case3"}


def test_report_schema(capsys, tmp_path):
    code, out = run(capsys, "report", "case3-f21", "--cache-dir", str(tmp_path))
    rep = json.loads(out.out)
    assert code == 0
    assert set(rep) == REPORT_KEYS
    assert set(rep["clifford"]) == CLIFFORD_KEYS
    assert rep["clifford"]["fc_paper"] == 27 and rep["clifford"]["fc_orbit"] == 11
    assert rep["table1"]["match_total"] is False
    assert rep["split"] == "split" and rep["errors"] == []
    for orbit in rep["clifford"]["orbits"]:
        assert set(orbit) == {"size", "inertia_index", "gamma"}


def test_report_case1(capsys):
    code, out = run(capsys, "report", "case1-psl27", "--no-cache")
    rep = json.loads(out.out)
    assert rep["clifford"] == {"nfc": 6, "fc_paper": None, "fc_orbit": 0, "direct_classes": 6, "orbits": []}
    assert rep["split"] == "not-applicable" and rep["table1"] is None


def test_report_is_deterministic_and_cache_safe(capsys, tmp_path):
    _, first = run(capsys, "report", "case2-psl32-nonsplit", "--cache-dir", str(tmp_path))
    assert (tmp_path / "case2-psl32-nonsplit.txt").exists()
    _, cached = run(capsys, "report", "case2-psl32-nonsplit", "--cache-dir", str(tmp_path))
    _, fresh = run(capsys, "report", "case2-psl32-nonsplit", "--no-cache")
    assert first.out == cached.out == fresh.out


def test_corrupt_cache_exit_code(capsys, tmp_path):
    run(capsys, "report", "case2-f21", "--cache-dir", str(tmp_path))
    path = tmp_path / "case2-f21.txt"
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:5] + lines[6:]) + "\n")
    code, out = run(capsys, "report", "case2-f21", "--cache-dir", str(tmp_path))
    assert code == 2 and "cache" in out.err


def test_verify_exit_code_on_inconsistency(capsys, monkeypatch):
    monkeypatch.setattr(
        report, "verify_table1", lambda *a, **k: {"table1_rows": [], "checks": {}, "internally_consistent": False}
    )
    code, _ = run(capsys, "verify-table1", "--no-cache")
    assert code == 1


def test_verify_table1_text(capsys, tmp_path):
    code, out = run(capsys, "verify-table1", "--no-json", "--cache-dir", str(tmp_path))
    assert code == 0
    text = out.out
    assert "case3-z7" in text and "internally consistent: True" in text
    assert "FAIL" not in text


def test_export_round_trip(capsys, tmp_path):
    path = tmp_path / "z7.txt"
    code, _ = run(capsys, "export", "case3-z7", str(path), "--no-cache")
    assert code == 0
    text = path.read_text()
    blocks = [b for b in text.split("\n\n") if b.strip()]
    assert len(blocks) == 7
    gens, elements = cli.read_export(path)
    assert elements is None
    for g in gens:
        m = np.array(to_matrix(g))
        assert np.array_equal(m @ m.T, np.eye(7, dtype=int))
    assert closure(gens) == atlas7.named_group("case3-z7")


def test_export_all(capsys, tmp_path):
    path = tmp_path / "f21.txt"
    run(capsys, "export", "case2-f21", str(path), "--all", "--no-cache")
    gens, elements = cli.read_export(path)
    assert len(elements) == 168
    assert set(elements) == set(atlas7.named_group("case2-f21"))


def test_split_check(capsys):
    code, out = run(capsys, "split-check", "case2-psl32-split", "--no-cache")
    rep = json.loads(out.out)
    assert code == 0 and rep["split"] == "split" and rep["complement_order"] == 168
    _, out = run(capsys, "split-check", "case2-psl32-nonsplit", "--no-cache")
    assert json.loads(out.out)["split"] == "nonsplit"


def test_unknown_id_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["report", "case9-z7"])
    assert exc.value.code == 2


def test_console_script_entry(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "so7atlas.cli", "list"], capture_output=True, text=True, cwd=tmp_path, check=True
    )
    assert len(out.stdout.splitlines()) == 24
