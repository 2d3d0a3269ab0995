import json
import shutil
import subprocess
import sys

import pytest

from orthocell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_k2_json(capsys):
    code, out, _ = run(capsys, "build", "k", "--dim", "2")
    assert code == 0
    assert len(json.loads(out)["cells"]) == 33


def test_build_kinds(capsys):
    assert json.loads(run(capsys, "build", "ko", "--dim", "1")[1])["cells"].__len__() == 3
    assert len(json.loads(run(capsys, "build", "rec", "--sides", "2,3")[1])["cells"]) == 9
    assert len(json.loads(run(capsys, "build", "quotient", "--dim", "2")[1])["cells"]) == 24
    assert len(json.loads(run(capsys, "build", "k-subdivided", "--dim", "1", "--l", "2")[1])["cells"]) == 9


@pytest.mark.parametrize("argv", [
    ["build", "k", "--dim", "9"],
    ["build", "k"],
    ["build", "nonsense"],
    ["verify", "markov", "--dim", "2", "--inject", "overlap"],
    ["verify", "orbit", "--dim", "1", "--group", "custom", "--sides", "1", "--generator", "0;1;1/2"],
    ["build", "rec", "--sides", "1,-2"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_all_passes(capsys):
    code, out, err = run(capsys, "verify", "all", "--dim", "2", "--lambda", "2", "--samples", "20")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["config"]["samples"] == 20
    assert "PASS" in err


@pytest.mark.parametrize("suite,fault", [("markov", "table"), ("cell-decomp", "overlap"),
                                         ("cell-decomp", "missing-vertex")])
def test_fault_injection_exits_1_with_witness(capsys, suite, fault):
    code, out, _ = run(capsys, "verify", suite, "--dim", "2", "--inject", fault)
    assert code == 1
    doc = json.loads(out)
    failing = [c for r in doc["reports"] for c in r["checks"] if not c["passed"]]
    assert failing and all(c["witnesses"] for c in failing)


def test_verify_input_and_export(tmp_path, capsys):
    path = tmp_path / "k2.json"
    assert run(capsys, "build", "k", "--dim", "2", "--out", str(path))[0] == 0
    assert run(capsys, "verify", "cell-decomp", "--input", str(path))[0] == 0
    code, off, _ = run(capsys, "export", "off", "--input", str(path))
    assert code == 0 and off.splitlines()[1] == "9 8 16"
    code, again, _ = run(capsys, "export", "json", "--input", str(path))
    assert again == path.read_text()


def test_malformed_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(capsys, "export", "off", "--input", str(bad))[0] == 2
    assert run(capsys, "verify", "cell-decomp", "--input", str(bad))[0] == 2
    assert run(capsys, "export", "off", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_point_reflection_group_rejects_the_unit_square(capsys):
    # x -> (1,1) - x maps the unit square onto itself, so it is not a fundamental domain
    code, out, _ = run(capsys, "verify", "orbit", "--dim", "2", "--group", "custom", "--sides", "1,1",
                       "--generator", "0,1;-1,-1", "--samples", "5")
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["reports"][0]["checks"]}
    assert not checks["distinct elements have disjoint tile interiors"]["passed"]


def test_console_script_entry_point():
    exe = shutil.which("orthocell")
    cmd = [exe] if exe else [sys.executable, "-m", "orthocell.cli"]
    res = subprocess.run(cmd + ["build", "k", "--dim", "1"], capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert len(json.loads(res.stdout)["cells"]) == 5
    res = subprocess.run(cmd + ["verify", "markov", "--dim", "1", "--inject", "table"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 1
