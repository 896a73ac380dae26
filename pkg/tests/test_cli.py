import json
import subprocess
import sys

import pytest

from picardirr.cli import Report, main, parse_config, render, run, validate_report


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_table(capsys):
    code, out, _ = invoke(capsys, "bounds", "--g-max", "5", "--format", "table")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:6]]
    assert [(int(r[0]), int(r[1])) for r in rows] == [(2, 4), (3, 8), (4, 16), (5, 32)]
    assert out.rstrip().endswith("status: ok")


def test_prym_json(capsys):
    code, out, _ = invoke(capsys, "prym", "--g-max", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [r["prym"]["uniform"]["num"] for r in doc["rows"]] == ["2", "8", "32"]
    assert [r["prym"]["geometric_k0"]["num"] for r in doc["rows"]] == ["3", "10", "36"]
    assert [r["prym"]["paper_claim"] for r in doc["rows"]] == [2, 8, 32]


def test_verify_secant(capsys):
    code, out, _ = invoke(capsys, "verify-secant", "--genus", "2", "--f", "-1,-1,0,0,0,1", "--trials", "10", "--seed", "42", "--format", "json")
    assert code == 0
    certs = json.loads(out)["certificates"]
    assert len(certs) == 10
    assert sum(c["chord_count"] == 4 for c in certs) >= 9


def test_verify_secant_explicit_target(capsys):
    code, out, _ = invoke(capsys, "verify-secant", "--s", "3,-7,11,5", "--format", "json")
    assert code == 0
    assert json.loads(out)["certificates"][0]["chord_count"] == 4


def test_playground_json(capsys):
    code, out, _ = invoke(capsys, "playground", "--n", "2", "--twists", "1,2", "--prime", "101", "--trials", "3", "--seed", "1", "--format", "json")
    assert code == 0
    draws = json.loads(out)["playground"]
    assert [d["restrict_resultant"] for d in draws] == [2, 2, 2]


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--g-max", "1"],
        ["bounds", "--g-max", "65"],
        ["bounds", "--format", "xml"],
        ["bounds", "--seed", "-1"],
        ["nonsense"],
        [],
        ["prym", "--convention", "other"],
        ["verify-secant", "--genus", "3"],
        ["verify-secant", "--f", "1,2,x"],
        ["verify-secant", "--f", "0,0,1,-2,1,0"],
        ["verify-secant", "--s", "1,2,3"],
        ["playground", "--twists", "0,1"],
        ["playground", "--prime", "100"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    code, _, err = invoke(capsys, *argv)
    assert code == 2
    assert err


def test_mismatch_exits_1(capsys, monkeypatch):
    import picardirr.cli as cli
    from picardirr.jacobian import jacobian_bound

    def broken(g):
        r = jacobian_bound(g)
        return type(r)(**{**r.__dict__, "h0_FTheta": r.h0_FTheta + 1})

    monkeypatch.setattr(cli, "jacobian_bound", broken)
    code, out, err = invoke(capsys, "bounds", "--g-max", "3", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "mismatch"
    assert any("h0(F(Theta))" in v for v in doc["violations"])
    assert "mismatch" in err


def test_internal_identity_failure_exits_1(capsys, monkeypatch):
    import picardirr.cli as cli

    def boom(g):
        raise ArithmeticError("c_g is not an integer")

    monkeypatch.setattr(cli, "jacobian_bound", boom)
    code, _, err = invoke(capsys, "bounds", "--g-max", "3")
    assert code == 1 and "c_g is not an integer" in err


def test_json_roundtrip_fixpoint():
    cfg = parse_config(["full-report", "--g-max", "4", "--trials", "2", "--points", "10", "--format", "json"])
    text = render(run(cfg), "json")
    doc = json.loads(text)
    validate_report(doc)
    again = render(Report.from_dict(doc), "json")
    assert again == text


def test_schema_rejects_bad_documents():
    import jsonschema

    doc = Report("bounds", 1, rows=[{"g": 2, "top_chern": {"num": "4", "den": "0"}}]).to_dict()
    with pytest.raises(jsonschema.ValidationError):
        validate_report(doc)


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\ng-max = 3\nformat = csv\n")
    code, out, _ = invoke(capsys, "bounds", "--config", str(cfg))
    assert code == 0
    assert out.splitlines()[0].startswith("section,g,bound")
    assert len(out.splitlines()) == 3
    code, out, _ = invoke(capsys, "bounds", "--config", str(cfg), "--g-max", "2", "--format", "json")
    assert [r["g"] for r in json.loads(out)["rows"]] == [2]


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert invoke(capsys, "bounds", "--config", str(bad))[0] == 2
    bad.write_text("g_max\n")
    assert invoke(capsys, "bounds", "--config", str(bad))[0] == 2
    assert invoke(capsys, "bounds", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_output_dir_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PICARDIRR_OUTPUT_DIR", str(tmp_path))
    code, out, _ = invoke(capsys, "bounds", "--g-max", "3", "--format", "json")
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "bounds.json").read_text())["rows"][1]["bound"] == 8
    invoke(capsys, "prym", "--g-max", "3", "-o", "sub/p.md", "--format", "markdown")
    assert (tmp_path / "sub" / "p.md").read_text().startswith("# Verification report: prym")


def test_full_report_is_markdown_with_anchors(capsys):
    code, out, _ = invoke(capsys, "full-report", "--g-max", "4", "--trials", "2", "--points", "10")
    assert code == 0
    assert out.startswith("# Verification report: full-report")
    assert "| bound | the inequality irr(JC) ≤ 2^g holds |" in out
    assert "## Chord certificates (g = 2)" in out and "## Split-bundle playground" in out


@pytest.mark.parametrize("fmt", ["table", "json", "csv", "markdown"])
def test_byte_identical_subprocess_runs(fmt):
    cmd = [sys.executable, "-m", "picardirr", "full-report", "--g-max", "5", "--trials", "3", "--points", "20", "--seed", "9", "--format", fmt]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_seed_changes_output(capsys):
    _, a, _ = invoke(capsys, "verify-secant", "--trials", "2", "--seed", "1", "--format", "json")
    _, b, _ = invoke(capsys, "verify-secant", "--trials", "2", "--seed", "2", "--format", "json")
    assert a != b


def test_config_shared_between_subcommands(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("g_max = 3\nformat = json\ntwists = 1,2; 2,2\ntrials = 1\npoints = 5\n")
    code, out, _ = invoke(capsys, "playground", "--config", str(cfg))
    assert code == 0
    assert [d["twists"] for d in json.loads(out)["playground"]] == [[1, 2], [2, 2]]
    code, out, _ = invoke(capsys, "bounds", "--config", str(cfg))
    assert code == 0 and len(json.loads(out)["rows"]) == 2
