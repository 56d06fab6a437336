"""Exit codes, report schema, and replay round-trips for the CLI."""

import json

import pytest

from minmod.cli import FAIL, INCONCLUSIVE, PASS, USAGE, main, validate_report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    doc = json.loads(out)
    validate_report(doc)
    return code, doc


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == PASS
    assert "lemma" in out and "chiral3" in out


def test_catalog_entry_prints_presentation(capsys):
    code, out, _ = run(capsys, "catalog", "cp", "--param", "n=4")
    assert code == PASS
    assert "gen x : 2" in out and "d y = x^9" in out


def test_check_pass(capsys):
    code, out, _ = run(capsys, "check", "lemma(i=0)")
    assert code == PASS
    assert "d^2 = 0: pass" in out and "x1^19 exact" in out


def test_check_inconclusive_on_non_elliptic(capsys, tmp_path):
    p = tmp_path / "free.alg"
    p.write_text("gen x : 2\n")
    code, out, _ = run(capsys, "check", str(p))
    assert code == INCONCLUSIVE
    assert "inconclusive" in out


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "lemma(i=0)")
    assert code == PASS and out.strip() == "231"


def test_betti(capsys):
    code, out, _ = run(capsys, "betti", "sphere(k=6)", "--max-degree", "6")
    assert code == PASS
    assert "b_0 = 1" in out and "b_6 = 1" in out


def test_exact_pass_and_fail(capsys):
    code, out, _ = run(capsys, "exact", "lemma(i=0)", "x1^19")
    assert code == PASS and "exact: True" in out
    code, out, _ = run(capsys, "exact", "lemma(i=0)", "y1")
    assert code == FAIL and "closed: False" in out


def test_volume_pass(capsys):
    code, doc = run_json(capsys, "volume", "chiral3(l=5)")
    assert code == PASS and doc["verdict"] == "pass"
    assert doc["degree"] == 47 and doc["functional"]


def test_volume_rejection(capsys, tmp_path):
    p = tmp_path / "bad.alg"
    p.write_text("gen x : 2\ngen y : 5\nd y = x^3\nvolume x^3\n")  # exact, wrong degree
    code, out, _ = run(capsys, "volume", str(p))
    assert code == FAIL and "rejected" in out


def test_spectrum_text_and_json(capsys):
    code, out, _ = run(capsys, "spectrum", "chiral3(l=5)")
    assert code == PASS and "NoOrientationReversal" in out
    code, doc = run_json(capsys, "spectrum", "chiral3(l=5)")
    assert code == PASS
    assert doc["classification"] == "NoOrientationReversal"
    assert doc["families"] == ["t^24"] and doc["complete"]
    assert doc["witnesses"]


def test_spectrum_case_depth_inconclusive(capsys):
    code, out, _ = run(capsys, "spectrum", "lemma(i=0)", "--case-depth", "0")
    assert code == INCONCLUSIVE


def test_flex_pass(capsys):
    code, doc = run_json(capsys, "flex", "lower-grading")
    assert code == PASS
    assert doc["scaling"]["exponent"] == 21
    assert [m["k"] for m in doc["multiples"]] == [2, 3]


def test_flex_inconclusive_without_condition(capsys):
    code, out, _ = run(capsys, "flex", "lemma(i=0)")
    assert code == INCONCLUSIVE and "no scaling certificate" in out


def test_verify_morphism(capsys, tmp_path):
    p = tmp_path / "f.mor"
    p.write_text("f x = 2*x\nf y = 512*y\n")
    code, out, _ = run(capsys, "verify", "cp(n=4)", str(p))
    assert code == PASS and "degree: 256" in out
    p.write_text("f x = 2*x\nf y = y\n")
    code, out, _ = run(capsys, "verify", "cp(n=4)", str(p))
    assert code == FAIL and "fails at y" in out


@pytest.mark.parametrize("argv", [
    ("check", "lemma(i=0)"),
    ("dim", "chiral3(l=5)"),
    ("betti", "sphere(k=6)", "--max-degree", "6"),
    ("exact", "lemma(i=0)", "x1^19"),
    ("volume", "chiral3(l=5)"),
    ("spectrum", "chiral3(l=5)"),
    ("flex", "lower-grading"),
])
def test_replay_round_trip(capsys, tmp_path, argv):
    code, out, _ = run(capsys, "--json", *argv)
    assert code == PASS
    p = tmp_path / "report.json"
    p.write_text(out)
    code, out, _ = run(capsys, "replay", str(p))
    assert code == PASS and "all certificates verify" in out


def test_replay_verify_round_trip(capsys, tmp_path):
    mor = tmp_path / "f.mor"
    mor.write_text("f x = 2*x\nf y = 512*y\n")
    code, out, _ = run(capsys, "--json", "verify", "cp(n=4)", str(mor))
    assert code == PASS
    p = tmp_path / "report.json"
    p.write_text(out)
    code, out, _ = run(capsys, "replay", str(p))
    assert code == PASS


def test_replay_detects_tampering(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "check", "lemma(i=0)")
    doc = json.loads(out)
    doc["certificates"]["ellipticity"][0]["exponent"] += 1
    p = tmp_path / "report.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "replay", str(p))
    assert code == FAIL and "replay FAIL" in out


def test_replay_rejects_malformed_report(capsys, tmp_path):
    p = tmp_path / "report.json"
    p.write_text(json.dumps({"schema": "minmod-report/1", "command": "nonesuch"}))
    code, out, err = run(capsys, "replay", str(p))
    assert code == USAGE and "invalid report" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "nonesuch")[0] == USAGE
    assert run(capsys, "dim", str(tmp_path / "missing.alg"))[0] == USAGE
    assert run(capsys, "dim", "lemma(i=oops)")[0] == USAGE
    bad = tmp_path / "bad.alg"
    bad.write_text("gen x : 1\n")
    assert run(capsys, "check", str(bad))[0] == USAGE


def test_json_reports_validate_against_schema(capsys):
    for argv in (("catalog",), ("check", "sphere(k=6)"), ("dim", "cp(n=4)")):
        code, doc = run_json(capsys, *argv)
        assert doc["schema"] == "minmod-report/1"
        assert doc["argv"] == ["--json", *argv]
