import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from torq.cli import main, report_schema

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*map(str, argv), "--out", str(out)])
    text = out.read_text()
    report = json.loads(text)
    jsonschema.validate(report, report_schema())
    assert report["exit_code"] == code
    return code, report, text


def test_verify_noneffective_relation(tmp_path):
    code, r, _ = run(tmp_path, "verify", PROBLEMS / "noneffective.json")
    assert code == 0
    assert {k: r["result"][k] for k in ("reflexive", "symmetric", "transitive", "finite")} \
        == dict.fromkeys(("reflexive", "symmetric", "transitive", "finite"), True)


def test_effectivize_cusp(tmp_path):
    code, r, _ = run(tmp_path, "effectivize", PROBLEMS / "cusp.json")
    assert code == 0
    assert r["result"]["W"] == [[2], [3]] and r["result"]["verified"] is True


def test_effectivize_non_toric(tmp_path):
    code, r, _ = run(tmp_path, "effectivize", PROBLEMS / "nontoric.json")
    assert code == 2
    assert r["error"]["type"] == "NotToric" and r["error"]["component"]


def test_quotient_reports(tmp_path):
    code, r, _ = run(tmp_path, "quotient", PROBLEMS / "cusp.json")
    assert code == 0 and r["result"]["verdict"] == "EffectiveGeometricQuotient"
    assert r["result"]["Y"]["relations"] == ["z2^3 - z3^2"]
    code, r, _ = run(tmp_path, "quotient", PROBLEMS / "no_quotient.json", "--bound", "4")
    assert code == 0 and r["result"]["verdict"] == "NoFiniteQuotient"


def test_amitsur_and_certify(tmp_path):
    code, r, _ = run(tmp_path, "amitsur", PROBLEMS / "cusp.json", "--levels", "3",
                     "--degrees", "0..6", "--field", "Fp:2")
    assert code == 0 and not r["result"]["nonzero"] and len(r["result"]["table"]) == 7
    code, r, _ = run(tmp_path, "certify-noneffective", PROBLEMS / "noneffective.json",
                     "--element", "3", "--bound", "5")
    assert code == 0 and r["result"]["holds"] is True
    code, r, _ = run(tmp_path, "amitsur", PROBLEMS / "no_quotient.json")
    assert code == 2 and r["error"]["where"] == "hom"


def test_invalid_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_rank": 1,\n "monoid_generators": [[1]],\n oops}')
    code, r, _ = run(tmp_path, "verify", bad)
    assert code == 2 and r["error"]["where"].startswith("line 3")
    bad.write_text(json.dumps({"ambient_rank": 1, "monoid_generators": [[1]],
                               "ideal_generators": [[{"coeff": "1", "x": [-1], "y": [0]}]]}))
    code, r, _ = run(tmp_path, "verify", bad)
    assert code == 2 and r["error"]["where"] == "ideal_generators[0][0].x"
    bad.write_text(json.dumps({"ambient_rank": 1, "monoid_generators": [[1]],
                               "ideal_generators": [[{"coeff": 0.5, "x": [1], "y": [0]}]]}))
    code, r, _ = run(tmp_path, "verify", bad)
    assert code == 2 and r["error"]["where"] == "ideal_generators[0][0].coeff"
    code, r, _ = run(tmp_path, "verify", PROBLEMS / "cusp.json", "--field", "Fp:4")
    assert code == 2


def test_budget_exceeded(tmp_path):
    code, r, _ = run(tmp_path, "amitsur", PROBLEMS / "cusp.json", "--budget-fiber", "2",
                     "--degrees", "6")
    assert code == 3 and r["status"] == "budget_exceeded"
    code, r, _ = run(tmp_path, "verify", PROBLEMS / "noneffective.json", "--budget-gb", "2")
    assert code == 3


def test_reports_are_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "torq.cli", "quotient", str(PROBLEMS / "no_quotient.json")]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["schema_version"] == "1.0"
