import json
import subprocess
import sys
from pathlib import Path

import pytest

from planeprover import cli, kernel

GEO = Path(__file__).resolve().parents[1] / "scripts" / "geo"
JSON_FIELDS = {"id", "verdict", "millis", "degree", "nterms"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_napoleon(capsys):
    code, out, _ = run(capsys, "prove", "Napoleon")
    assert code == 0 and out.strip() == "Napoleon: proved"


def test_prove_unknown(capsys):
    code, out, _ = run(capsys, "prove", "NoSuchTheorem")
    assert code == 2 and "NoSuchTheorem: error" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["prove", "Pappus"], 0),
        (["prove", "Lehmus"], 0),
        (["prove", "Napoleon~flipped"], 1),
        (["prove", "Pappus", "Napoleon~flipped"], 1),
        (["prove", "Napoleon~flipped", "NoSuchTheorem"], 2),
        (["prove", "Pappus", "NoSuchTheorem"], 2),
        (["check", str(GEO / "napoleon.geo")], 0),
        (["check", str(GEO / "midpoint_wrong.geo")], 1),
        (["check", str(GEO / "does_not_exist.geo")], 2),
        (["oracle", "Pappus", "--seed", "3"], 0),
        (["oracle", "Napoleon~perturbed", "--seed", "3"], 1),
        (["oracle", "NoSuchTheorem"], 2),
        (["bogus"], 2),
        (["prove", "--frobnicate", "Napoleon"], 2),
        (["prove"], 2),
        (["prove", "--all", "Napoleon"], 2),
        (["prove", "Napoleon", "--timeout", "0"], 2),
        ([], 2),
    ],
)
def test_exit_code_matrix(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_bad_script_reports_location(capsys, tmp_path):
    f = tmp_path / "bad.geo"
    f.write_text("point A;\nassert is_zero(de_sq(A, B));\n", encoding="utf-8")
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and "line 2, column 25" in err


def test_usage_on_unknown_flag(capsys):
    code, _, err = run(capsys, "prove", "--nope")
    assert code == 2 and "usage:" in err


def test_prove_all_json(capsys):
    code, out, _ = run(capsys, "prove", "--all", "--json")
    data = json.loads(out)
    assert code == 0
    assert len(data["results"]) == 25
    for entry in data["results"]:
        assert JSON_FIELDS <= set(entry) <= JSON_FIELDS | {"certificate"}
    verdicts = {e["id"]: e["verdict"] for e in data["results"]}
    assert verdicts.pop("Lehmus") == "certificate"
    assert set(verdicts.values()) == {"proved"}


def _schema(obj):
    if isinstance(obj, dict):
        return {k: _schema(v) for k, v in obj.items() if k != "millis"}
    if isinstance(obj, list):
        return [_schema(v) for v in obj]
    return type(obj).__name__


def test_json_is_schema_stable(capsys):
    a = json.loads(run(capsys, "prove", "--all", "--parallel", "--json")[1])
    b = json.loads(run(capsys, "prove", "--all", "--json")[1])
    assert _schema(a) == _schema(b)
    assert [e["verdict"] for e in a["results"]] == [e["verdict"] for e in b["results"]]


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--json", str(GEO / "incenter.geo"))
    data = json.loads(out)
    assert code == 0 and data["results"][0]["verdict"] == "proved"
    assert data["input_digest"].startswith("sha256:")


def test_trace_prints_canonical_text(capsys):
    code, out, _ = run(capsys, "prove", "Napoleon", "--trace")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Napoleon: proved"
    assert lines[1].startswith("  cet -> [") and "r3" in lines[1]


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and len(out.splitlines()) == 25
    code, out, _ = run(capsys, "list", "--json")
    rows = {e["id"]: e["claim_kind"] for e in json.loads(out)}
    assert rows["Napoleon"] == "equilaterality" and rows["Soddy"] == "groebner-zero"


def test_max_terms_flag(capsys):
    old = kernel.get_max_terms()
    try:
        code, out, _ = run(capsys, "prove", "Feuerbach", "--max-terms", "3")
    finally:
        kernel.set_max_terms(old)
    assert code == 2 and "ResourceError" in out


def test_environment_override():
    env = {"PLANEPROVER_MAX_TERMS": "3", "PATH": ""}
    proc = subprocess.run(
        [sys.executable, "-m", "planeprover.cli", "prove", "Feuerbach"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 2 and "ResourceError" in proc.stdout
