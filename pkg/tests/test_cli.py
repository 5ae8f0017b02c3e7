import copy
import csv
import io
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

import fsbench
from fsbench.cli import InputError, main, run_scenario, validate, verify_report

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "docs" / "scenarios"


def load(name):
    return json.loads((SCENARIOS / name).read_text())


def run(argv, capsys):
    status = main(argv)
    out, err = capsys.readouterr()
    return status, out, err


def test_replay_scenario(capsys):
    status, out, _ = run(["run", "--scenario", str(SCENARIOS / "replay-multicube.json")], capsys)
    assert status == 0
    report = json.loads(out)
    assert report["checks_passed"] and report["result"]["all_match"]
    cases = report["result"]["cases"]
    assert len(cases) == 1 + 4 + 6 + 4 + 1
    assert all(c["p"] == c["d"] for c in cases)


def test_coverage_constant_scenario(capsys):
    status, out, _ = run(["run", "--scenario", str(SCENARIOS / "coverage-constant.json")], capsys)
    assert status == 0
    coverage = json.loads(out)["result"]["coverage"]
    assert coverage["missing"] == [1, 2]
    assert coverage["attained"]["0"]["count"] == 7


def test_malformed_ordinal(capsys):
    status, out, err = run(["run", "--scenario", str(SCENARIOS / "bad-ordinal.json")], capsys)
    assert status == 1 and out == ""
    assert "/instance/elements/1/entries/0/0" in err


def test_schema_violation_pointer():
    sc = load("pentagon.json")
    sc["params"]["lam"] = "three"
    with pytest.raises(InputError) as info:
        validate(sc)
    assert info.value.pointer == "/params/lam"


def test_unreadable_scenario(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    status, _, err = run(["run", "--scenario", str(bad)], capsys)
    assert status == 1 and "input error" in err


def test_recipe_needs_seed():
    sc = load("condense-recipe.json")
    del sc["seed"]
    with pytest.raises(InputError) as info:
        run_scenario(sc)
    assert info.value.pointer == "/seed"
    text, status = run_scenario(sc, seed=3)
    assert status == 0


def test_check_failure_exit_code(capsys, tmp_path):
    sc = load("pentagon.json")
    sc["colouring"] = {"name": "constant", "theta": 2}
    path = tmp_path / "const.json"
    path.write_text(json.dumps(sc))
    status, out, _ = run(["run", "--scenario", str(path)], capsys)
    assert status == 2
    assert json.loads(out)["result"]["counterexample"] == [0, 1, 2]


def test_meta_search_scenario():
    sc = {"schema_version": 1, "name": "R(3,3)", "task": "partition-check", "params": {"n": 6, "lam": 3, "mu": 2, "theta": 2, "meta_search": True}}
    text, status = run_scenario(sc)
    assert status == 0 and json.loads(text)["result"]["passing"] == 0


def test_resource_bound_is_input_error():
    sc = load("coverage-constant.json")
    with pytest.raises(InputError) as info:
        run_scenario(sc, bound=3)
    assert info.value.pointer == "/bounds/resource"


@pytest.mark.parametrize("name", sorted(p.name for p in SCENARIOS.glob("*.json") if p.name != "bad-ordinal.json"))
def test_reports_are_byte_identical(name, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"{k}.json"
        assert main(["run", "--scenario", str(SCENARIOS / name), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    report = json.loads(outs[0])
    assert report["version"] == fsbench.__version__
    assert report["parameters"]["bounds"]["resource"] >= 1
    assert report["parameters"]["output"]["format"] == "json"


def test_seed_flag_changes_resolved_parameters(capsys):
    sc = load("condense-recipe.json")
    a, _ = run_scenario(copy.deepcopy(sc), seed=5)
    b, _ = run_scenario(copy.deepcopy(sc), seed=5)
    c, _ = run_scenario(copy.deepcopy(sc), seed=6)
    assert a == b and a != c
    assert json.loads(a)["parameters"]["seed"] == 5


def test_csv_output(capsys):
    status, out, _ = run(["run", "--scenario", str(SCENARIOS / "coverage-constant.json"), "--format", "csv"], capsys)
    assert status == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["colour", "count"], ["0", "7"], ["1", "0"], ["2", "0"]]


def test_embed_scenario(capsys):
    status, out, _ = run(["run", "--scenario", str(SCENARIOS / "embed-z12.json")], capsys)
    assert status == 0
    result = json.loads(out)["result"]
    assert result["relations_hold"]


def test_verify_unknown_suite(capsys):
    status, _, err = run(["verify", "unknown"], capsys)
    assert status == 1 and "unknown" in err


def test_verify_witness_f(capsys):
    status, out, _ = run(["verify", "witness-f"], capsys)
    assert status == 0
    report = json.loads(out)
    assert report["version"] == fsbench.__version__
    assert all(check["passed"] for check in report["checks"])
    assert "seconds" not in json.dumps(report)


def test_verify_report_csv():
    text, status = verify_report("fssets", fmt="csv")
    assert status == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["check", "passed", "cases", "failures"]
    assert all(r[1] == "True" for r in rows[1:])


def test_schema_shipped_in_docs_matches_package():
    packaged = resources.files("fsbench").joinpath("data/scenario.schema.json").read_bytes()
    assert packaged == (ROOT / "docs" / "scenario.schema.json").read_bytes()


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert fsbench.__version__ in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fsbench", "run", "--scenario", str(SCENARIOS / "pentagon.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["holds"] is True
