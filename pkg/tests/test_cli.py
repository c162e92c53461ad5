import csv
import json
import math
from pathlib import Path

import pytest

from appellkit import verify
from appellkit.cli import main
from appellkit.config import RunConfig


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


def test_tables_small(tmp_path):
    assert main(["tables", "--kmax", "4", "--output-dir", str(tmp_path)]) == 0
    ck_rows = _read_csv(tmp_path / "alternating_sums.csv")
    assert [row[1] for row in ck_rows[1:]] == ["1", "1/3", "1/3", "1/5", "1/5"]
    coeff_rows = _read_csv(tmp_path / "appell_coefficients.csv")
    assert coeff_rows[1] == ["0", "0", "1"]
    weight_rows = _read_csv(tmp_path / "weights.csv")
    fock_b = {int(r[0]): r[3] for r in weight_rows[1:] if r[1] == "fock"}
    # transported factorial weight: k!/((k+1)(k+2)); at k = 2 that is 2/12
    assert fock_b[2] == "1/6"
    assert fock_b[0] == "1/2"


def test_tables_kmax_zero(tmp_path):
    assert main(["tables", "--kmax", "0", "--output-dir", str(tmp_path)]) == 0
    coeff_rows = _read_csv(tmp_path / "appell_coefficients.csv")
    assert coeff_rows == [["k", "j", "T"], ["0", "0", "1"]]
    ck_rows = _read_csv(tmp_path / "alternating_sums.csv")
    assert ck_rows == [["k", "c"], ["0", "1"]]


def test_tables_kmax_guard(tmp_path):
    assert main(["tables", "--kmax", "65", "--output-dir", str(tmp_path)]) == 2


def test_verify_suite_and_determinism(tmp_path):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    assert main(["verify", "--suite", "fmr", "--output", str(out_a)]) == 0
    assert main(["verify", "--suite", "fmr", "--output", str(out_b)]) == 0
    rep_a = json.loads(out_a.read_text())
    rep_b = json.loads(out_b.read_text())
    assert rep_a == rep_b
    assert rep_a["passed"] is True
    names = {r["identity"] for r in rep_a["results"]}
    assert "fmr_table" in names and "fmr_norm" in names
    for r in rep_a["results"]:
        assert {"identity", "statement", "instances", "max_defect",
                "passed", "note"} <= set(r)


def test_verify_negative_control(tmp_path):
    out = tmp_path / "neg.json"
    code = main(["verify", "--suite", "operators", "--inject-gamma-fault", "0.9",
                 "--output", str(out)])
    assert code == 1
    rep = json.loads(out.read_text())
    failed = [r for r in rep["results"] if not r["passed"]]
    assert [r["identity"] for r in failed] == ["gamma_recurrence"]
    assert failed[0]["max_defect"] == pytest.approx(0.2)


def test_verify_md_format(tmp_path, capsys):
    assert main(["verify", "--suite", "fmr", "--format", "md"]) == 0
    out = capsys.readouterr().out
    assert "| identity |" in out and "overall: pass" in out


def test_kernel_value_and_domain(capsys):
    assert main(["kernel", "--space", "fock", "--q", "0.5", "--p", "0.5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"][0] == pytest.approx(math.exp(0.25), abs=1e-10)
    assert main(["kernel", "--space", "hardy", "--q", "1.2", "--p", "0.5"]) == 2
    assert main(["kernel", "--space", "nope"]) == 2


def test_kernel_grid(tmp_path):
    out = tmp_path / "grid.csv"
    assert main(["kernel", "--space", "hardy", "--grid", "4", "--radius", "0.4",
                 "--trunc", "80", "--output", str(out)]) == 0
    rows = _read_csv(out)
    assert len(rows) == 17
    assert rows[0][-1] == "tail"


def test_transform_round_trip(tmp_path):
    source = tmp_path / "eta3.json"
    source.write_text(json.dumps([[0, 0, 0, 0]] * 3 + [[1, 0, 0, 0]]))
    out = tmp_path / "image.json"
    assert main(["transform", "--input", str(source), "--output", str(out),
                 "--check-quadrature"]) == 0
    image = json.loads(out.read_text())
    assert image[3][0] == pytest.approx(1 / math.sqrt(6), rel=1e-12)
    assert main(["transform", "--input", str(tmp_path / "missing.json"),
                 "--output", str(out)]) == 2


def test_bkernel_grid(tmp_path):
    out = tmp_path / "af.csv"
    assert main(["bkernel", "--kind", "af", "--q", "0.4,0.1,0,0", "--x-count", "5",
                 "--output", str(out)]) == 0
    rows = _read_csv(out)
    assert len(rows) == 6


def test_config_env_fallback(tmp_path, monkeypatch):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"seed": 7, "max_degree": 6}))
    monkeypatch.setenv("APPELLKIT_CONFIG", str(cfg_file))
    cfg = RunConfig.load()
    assert cfg.seed == 7 and cfg.max_degree == 6
    with pytest.raises(ValueError):
        RunConfig(max_degree=30)
    with pytest.raises(ValueError):
        RunConfig.from_mapping({"bogus": 1})


def test_manifest_covered_by_full_report():
    cfg = RunConfig()
    rep = verify.report("all", cfg)
    reported = {r["identity"] for r in rep["results"]}
    for suite, names in verify.IDENTITY_MANIFEST.items():
        for name in names:
            assert name in reported, f"{suite}:{name} missing from the full report"
    assert rep["passed"] is True
