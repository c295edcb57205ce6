import json
import subprocess
import sys

import pytest

from snarkdom.cli import main
from snarkdom.report import VerificationReport, build_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_usage(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    out, err = capsys.readouterr()
    return exc.value.code, out, err


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--n", "3", "--format", "dimacs")
    assert code == 0 and out.splitlines()[0] == "p edge 12 18"
    code, out, _ = run(capsys, "gen", "--n", "5", "--format", "json")
    assert code == 0 and len(json.loads(out)["vertices"]) == 20
    code, out, _ = run(capsys, "gen", "--n", "4", "--format", "adjlist")
    assert len(out.splitlines()) == 16


def test_gen_rejects_small_n(capsys):
    code, _, err = run_usage(capsys, "gen", "--n", "2", "--format", "dimacs")
    assert code == 2 and "usage" in err


def test_unknown_format(capsys):
    code, _, _ = run_usage(capsys, "gen", "--n", "3", "--format", "xml")
    assert code == 2


@pytest.mark.parametrize("variant,expected", [("total", 5), ("weak_roman", 5), ("upper", 5)])
def test_solve(capsys, variant, expected):
    code, out, _ = run(capsys, "solve", "--n", "3", "--variant", variant, "--workers", "1")
    data = json.loads(out)
    assert code == 0
    assert data["optimum"] == expected
    assert set(data) == {"variant", "n", "optimum", "witness", "proof_bound", "candidates_examined", "elapsed_ms"}


def test_solve_pretty(capsys):
    code, out, _ = run(capsys, "solve", "--n", "3", "--variant", "total", "--pretty", "--workers", "1")
    assert code == 0 and out.startswith("total(J_3) = 5")


def test_solve_deterministic_keeps_timing_off_stdout(capsys):
    code, out, err = run(capsys, "solve", "--n", "3", "--variant", "secure", "--deterministic", "--workers", "1")
    assert code == 0
    assert json.loads(out)["elapsed_ms"] is None
    assert "elapsed_ms=" in err


def test_solve_out_of_range(capsys):
    code, _, err = run(capsys, "solve", "--n", "9", "--variant", "total")
    assert code == 2 and "n <= 7" in err


def test_solve_self_check_failure(capsys, monkeypatch):
    import snarkdom.cli as cli

    monkeypatch.setattr(cli, "validate", lambda *a: False)
    code, _, err = run(capsys, "solve", "--n", "3", "--variant", "domination", "--workers", "1")
    assert code == 1 and "self-check" in err


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--n", "41", "--variant", "secure")
    data = json.loads(out)
    assert code == 0 and data["size"] == 62 and data["formula"] == 62 and data["valid"]
    code, out, _ = run(capsys, "certify", "--n", "40", "--variant", "connected")
    assert code == 0 and json.loads(out)["size"] == 80
    code, _, _ = run(capsys, "certify", "--n", "3", "--variant", "secure")
    assert code == 2


def test_certify_mismatch(capsys, monkeypatch):
    import snarkdom.cli as cli

    monkeypatch.setattr(cli, "formula_value", lambda variant, n: 0)
    code, out, _ = run(capsys, "certify", "--n", "5", "--variant", "total")
    assert code == 1 and json.loads(out)["formula"] == 0


def test_formulas_certificates_only(capsys):
    code, out, _ = run(capsys, "formulas", "--n-max", "60")
    report = json.loads(out)
    assert code == 0
    assert set(report) == {"version", "rows", "elapsed_ms"}
    rows = report["rows"]
    assert all(r["agree"] for r in rows)
    assert all(r["solver_value"] is None for r in rows)
    secure3 = next(r for r in rows if r["variant"] == "secure" and r["n"] == 3)
    assert secure3["certificate_size"] is None
    keys = {"variant", "n", "formula", "certificate_size", "certificate_valid", "solver_value", "solver_skipped_reason", "agree"}
    assert all(set(r) == keys for r in rows)


def test_formulas_with_solver_small(capsys):
    code, out, _ = run(capsys, "formulas", "--n-max", "4", "--with-solver", "--workers", "1")
    rows = json.loads(out)["rows"]
    assert code == 0
    assert all(r["solver_value"] == r["formula"] for r in rows if r["solver_value"] is not None)
    assert {r["variant"] for r in rows if r["solver_value"] is None} == {"weakly_convex", "convex"}


def test_formulas_reports_disagreement(capsys, monkeypatch):
    import snarkdom.report as report

    monkeypatch.setattr(report, "check_certificate", lambda variant, n: (1, False))
    code, out, _ = run(capsys, "formulas", "--n-max", "3")
    assert code == 1
    assert not all(r["agree"] for r in json.loads(out)["rows"])


def test_formulas_rejects_small_nmax(capsys):
    code, _, _ = run_usage(capsys, "formulas", "--n-max", "2")
    assert code == 2


def test_formulas_pretty(capsys):
    code, out, _ = run(capsys, "formulas", "--n-max", "3", "--pretty")
    assert code == 0 and out.splitlines()[0].split()[:3] == ["variant", "n", "formula"]


def test_report_json_roundtrip():
    report = build_report(5)
    text = report.to_json()
    again = VerificationReport.from_dict(json.loads(text)).to_json()
    assert json.loads(again) == json.loads(text)
    assert again == text


def _lp_sections(text):
    lines = text.splitlines()
    idx = {name: lines.index(name) for name in ("Minimize", "Subject To", "Binary", "End")}
    assert idx["Minimize"] < idx["Subject To"] < idx["Binary"] < idx["End"]
    rows = lines[idx["Subject To"] + 1 : idx["Binary"]]
    binaries = lines[idx["Binary"] + 1 : idx["End"]]
    return rows, binaries


def test_export_lp_domination(tmp_path, capsys):
    path = tmp_path / "dom.lp"
    code, _, _ = run(capsys, "export-lp", "--n", "3", "--variant", "domination", "--out", str(path))
    rows, binaries = _lp_sections(path.read_text())
    assert code == 0
    assert len(binaries) == 12 and len(rows) == 12
    assert "x_a3" in {b.strip() for b in binaries}
    assert all(r.endswith(">= 1") for r in rows)


def test_export_lp_independent(capsys):
    code, out, _ = run(capsys, "export-lp", "--n", "3", "--variant", "independent")
    rows, _ = _lp_sections(out)
    assert code == 0
    assert sum(r.endswith(">= 1") for r in rows) == 12
    assert sum(r.endswith("<= 1") for r in rows) == 18


def test_export_lp_two_domination_and_total(capsys):
    _, out, _ = run(capsys, "export-lp", "--n", "3", "--variant", "two_domination")
    rows, _ = _lp_sections(out)
    assert rows[0] == " cover_b1: 2 x_b1 + x_a1 + x_b2 + x_b3 >= 2"
    _, out, _ = run(capsys, "export-lp", "--n", "3", "--variant", "total")
    rows, _ = _lp_sections(out)
    assert rows[0] == " cover_b1: x_a1 + x_b2 + x_b3 >= 1"


@pytest.mark.parametrize("variant", ["connected", "secure", "weak_roman", "upper"])
def test_export_lp_refuses(capsys, variant):
    code, _, _ = run(capsys, "export-lp", "--n", "3", "--variant", variant)
    assert code == 2


def test_patterns(capsys):
    code, out, _ = run(capsys, "patterns", "--n", "3", "--variant", "domination", "--size", "3")
    rows = json.loads(out)
    assert code == 0
    assert {"set": ["a^1", "a^2", "a^3"], "copy_weights": [1, 1, 1], "histogram": [0, 3, 0, 0, 0]} in rows
    code, out, _ = run(capsys, "patterns", "--n", "4", "--variant", "domination", "--size", "3")
    assert code == 0 and json.loads(out) == []


def test_patterns_total_avoids_111(capsys):
    from snarkdom.validators import has_cyclic_pattern

    code, out, _ = run(capsys, "patterns", "--n", "5", "--variant", "total", "--size", "8")
    rows = json.loads(out)
    assert code == 0 and rows
    assert not any(has_cyclic_pattern(r["copy_weights"], "111") for r in rows)


def test_patterns_errors(capsys):
    code, _, _ = run(capsys, "patterns", "--n", "3", "--variant", "total", "--size", "40")
    assert code == 2
    code, _, _ = run(capsys, "patterns", "--n", "9", "--variant", "total", "--size", "5")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "snarkdom", "gen", "--n", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.startswith("p edge 12 18")
