import json
from pathlib import Path

from tribranch.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report_of(out: str) -> dict:
    return json.loads(out)


def test_validate_good_spec(capsys):
    code, out, err = run(capsys, "validate", FIXTURES / "f05_identity.json")
    assert code == 0
    doc = report_of(out)
    assert doc["ok"] is True
    assert doc["exit_code"] == 0
    assert doc["command"] == "validate"
    assert len(doc["input"]["sha256"]) == 64
    assert "clean" in err


def test_validate_matrix_dimension_mismatch(capsys):
    code, out, _ = run(capsys, "validate", FIXTURES / "f05_wrong_matrix.json")
    assert code == 1
    doc = report_of(out)
    assert any(e["code"] == "matrix-dimension" for e in doc["validation"])


def test_validate_truncated_file(capsys):
    code, out, err = run(capsys, "validate", FIXTURES / "truncated.json")
    assert code == 2
    assert out == ""
    assert "JSON" in err


def test_validate_missing_file(capsys):
    code, _, err = run(capsys, "validate", FIXTURES / "no_such_file.json")
    assert code == 2
    assert "cannot read" in err


def test_homology_certified(capsys):
    code, out, err = run(capsys, "homology", FIXTURES / "f05_identity.json")
    assert code == 0
    doc = report_of(out)
    assert doc["homology"]["h1"] == {"free_rank": 4, "torsion": [],
                                     "invariant_factors": [0, 0, 0, 0]}
    assert doc["certificate"]["lower_bound"] == 4
    assert doc["certificate"]["verdict"] == "Certified"
    assert "Z^4" in err and "Certified" in err


def test_homology_uncertified_twist(capsys):
    code, out, err = run(capsys, "homology", FIXTURES / "f11_twist.json")
    assert code == 0
    doc = report_of(out)
    assert doc["homology"]["h1"] == {"free_rank": 1, "torsion": [],
                                     "invariant_factors": [0]}
    assert doc["certificate"]["verdict"] == "Uncertified"
    assert "not established" in doc["certificate"]["statement"]
    assert "lower bound 1" in err


def test_homology_plain_f11(capsys):
    code, out, _ = run(capsys, "homology", FIXTURES / "f11_identity.json")
    assert code == 0
    doc = report_of(out)
    assert doc["homology"]["h1"] == {"free_rank": 2, "torsion": [],
                                     "invariant_factors": [0, 0]}
    assert doc["certificate"]["verdict"] == "Uncertified"


def test_construct_naive(tmp_path, capsys):
    out_file = tmp_path / "complex.json"
    code, out, _ = run(capsys, "construct", FIXTURES / "f11_identity.json",
                       "--mode", "naive", "--out", out_file)
    assert code == 0
    doc = report_of(out)
    assert doc["inventory"]["branches"] == 3
    assert doc["inventory"]["blocks"] == 3
    assert doc["inventory"]["circles"] == 1
    written = json.loads(out_file.read_text())
    assert written["format"] == "tribranch-complex/1"
    assert written["inventory"] == doc["inventory"]
    assert doc["euler_audit"]["issues"] == []


def test_construct_naive_rejects_disc(tmp_path, capsys):
    spec = {"page": {"genus": 0, "boundary": 1}, "monodromy": {"h1_matrix": []}}
    spec_file = tmp_path / "disc.json"
    spec_file.write_text(json.dumps(spec))
    code, out, err = run(capsys, "construct", spec_file, "--mode", "naive",
                         "--out", tmp_path / "cx.json")
    assert code == 1
    assert "chi" in report_of(out)["error"]


def test_construct_outer_inventory(tmp_path, capsys):
    out_file = tmp_path / "complex.json"
    code, out, _ = run(capsys, "construct", FIXTURES / "f04_identity.json",
                       "--mode", "outer", "--out", out_file)
    assert code == 0
    doc = report_of(out)
    assert doc["inventory"]["branches"] == 8
    assert doc["inventory"]["blocks"] == 6
    assert doc["inventory"]["circles"] == 6


def test_certify_positive(capsys):
    code, out, err = run(capsys, "certify", FIXTURES / "f05_identity.json")
    assert code == 0
    doc = report_of(out)
    assert doc["essentiality"]["verdict"] == "Essential"
    statuses = {c["condition"]: c["status"] for c in doc["essentiality"]["conditions"]}
    assert statuses == {
        "(1)": "Pass",
        "(2)": "StructuralPass",
        "(3)": "StructuralPass",
        "(4)": "Pass",
    }
    assert doc["complex_sha256"]
    assert "verdict: Essential" in err


def test_certify_negative(capsys):
    code, out, _ = run(capsys, "certify", FIXTURES / "f11_identity.json")
    assert code == 1
    doc = report_of(out)
    statuses = {c["condition"]: c["status"] for c in doc["essentiality"]["conditions"]}
    assert statuses["(4)"] == "NotCertified"
    assert doc["certificate"]["lower_bound"] == 2
    for cond in ("(1)", "(2)", "(3)"):
        assert statuses[cond] in ("Pass", "StructuralPass")


def test_certify_requires_pants_data(tmp_path, capsys):
    spec = {"page": {"genus": 0, "boundary": 5},
            "monodromy": {"h1_matrix": [[1 if i == j else 0 for j in range(4)]
                                        for i in range(4)]}}
    spec_file = tmp_path / "nopath.json"
    spec_file.write_text(json.dumps(spec))
    code, out, _ = run(capsys, "certify", spec_file)
    assert code == 1
    assert "pants data required" in report_of(out)["error"]


def test_report_file_flag(tmp_path, capsys):
    report_file = tmp_path / "report.json"
    code, out, _ = run(capsys, "certify", FIXTURES / "f05_identity.json",
                       "--report", report_file, "--quiet")
    assert code == 0
    assert out == ""
    doc = json.loads(report_file.read_text())
    assert doc["essentiality"]["verdict"] == "Essential"


def test_quiet_suppresses_human_lines(capsys):
    _, _, err = run(capsys, "validate", FIXTURES / "f05_identity.json", "--quiet")
    assert err == ""


def test_exit_codes_never_other_values(tmp_path, capsys):
    cases = [
        ("validate", FIXTURES / "f05_identity.json"),
        ("validate", FIXTURES / "f05_wrong_matrix.json"),
        ("validate", FIXTURES / "truncated.json"),
        ("homology", FIXTURES / "f11_twist.json"),
        ("certify", FIXTURES / "f11_identity.json"),
    ]
    for argv in cases:
        code, _, _ = run(capsys, *argv)
        assert code in (0, 1, 2)


def test_reports_embed_input_hash_and_are_deterministic(capsys):
    import hashlib

    path = FIXTURES / "f05_identity.json"
    code1, out1, _ = run(capsys, "certify", path, "--quiet")
    code2, out2, _ = run(capsys, "certify", path, "--quiet")
    assert out1 == out2 and code1 == code2
    doc = report_of(out1)
    assert doc["input"]["sha256"] == hashlib.sha256(path.read_bytes()).hexdigest()
    assert doc["timings"] is None
