import json
import subprocess
import sys

import jsonschema
import pytest

from cphi6.cli import Config, UsageError, cmd_verify, main
from cphi6.report import REPORT_SCHEMA, Report
from cphi6.tower import A_POLYS, modeq_residual
from cphi6.tpoly import TPoly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_t(capsys):
    code, out, _ = run(capsys, "expand", "12:4,2:2,6:-2,4:-4", "--n", "5")
    assert code == 0
    assert out.splitlines()[0] == "1: 1"
    assert len(out.splitlines()) == 5


def test_expand_partitions(capsys):
    code, out, _ = run(capsys, "expand", "1:-1", "--n", "8", "--bare-product")
    assert code == 0
    assert [int(line.split(": ")[1]) for line in out.splitlines()] == [1, 1, 2, 3, 5, 7, 11, 15]


@pytest.mark.parametrize("argv", [
    ["expand", "1:1,2:1", "--n", "3"],
    ["expand", "1:-1", "--n", "8"],
    ["expand", "1:x"],
    ["expand", "1:1", "--n", "0"],
    ["verify", "group1", "--precision", "10"],
    ["verify", "theorem", "--alpha-max", "6", "--mod-exp", "4"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_verify_group1(capsys):
    code, out, _ = run(capsys, "verify", "group1")
    assert code == 0
    assert out.startswith("[group1] PASS  (4 checks")


def test_verify_theorem_json(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--alpha-max", "2", "--n-max", "100", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert code == 0 and doc["status"] == "pass"
    assert [c["id"] for c in doc["checks"]] == ["theorem-alpha1", "theorem-alpha2"]


def test_verify_arrays(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "arrays", "--m-max", "30", "--cache-dir", str(tmp_path))
    assert code == 0 and "FAIL" not in out
    assert (tmp_path / "arrays.json").exists()


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CPHI6_CACHE_DIR", str(tmp_path))
    code, _, _ = run(capsys, "verify", "lemma", "--alpha-max", "2", "--n-max", "5")
    assert code == 0 and (tmp_path / "arrays.json").exists()


def test_empty_report_schema():
    doc = Report("empty").to_json()
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["checks"] == [] and doc["status"] == "pass"


def test_failing_report_carries_witness():
    bad = dict(A_POLYS)
    bad[1] = TPoly({2: 3, 1: 1})
    residual = modeq_residual("t", 40, bad)
    report = Report("mutation")
    report.add("modeq-t", "mutated t-equation", "cubic equation for t", residual.is_zero,
               None if residual.is_zero else f"q^{residual.ord}")
    doc = report.to_json()
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["status"] == "fail"
    assert doc["checks"][0]["witness"] == f"q^{residual.ord}"


def test_config_validation():
    with pytest.raises(UsageError):
        cmd_verify("group1", Config(mod_exp=3))
    with pytest.raises(UsageError):
        cmd_verify("group1", Config(alpha_max=0))


def test_verify_all_json_validates():
    proc = subprocess.run([sys.executable, "-m", "cphi6", "verify", "all", "--json"],
                          capture_output=True, text=True, timeout=600)
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert proc.returncode == 0 and doc["status"] == "pass"
    suites = [c["id"].split("/")[0] for c in doc["checks"]]
    assert suites.index("group1") < suites.index("theorem") < suites.index("known")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cphi6", "expand", "1:-1", "--n", "3", "--bare-product"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == ["0:", "1", "1:", "1", "2:", "2"]
