import io
import json
import subprocess
import sys
from dataclasses import replace

import pytest

from degenseries import transform
from degenseries.cli import main


def run(*argv, registry=None):
    out = io.StringIO()
    code = main(list(argv), out=out, registry=registry)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,expected", [
    (["compute", "s2", "--n", "3", "--k", "2"], "3 - 3*L"),
    (["compute", "s1", "--n", "2", "--k", "1"], "-1 + L"),
    (["compute", "s2", "--n", "3", "--k", "2", "--lambda", "1/3"], "2"),
    (["compute", "euler", "--n", "2", "--lambda", "1/2", "--x", "0"], "1/4"),
    (["compute", "bernoulli", "--n", "2", "--lambda", "0"], "1/6"),
    (["compute", "bell", "--n", "3", "--x", "1", "--lambda", "0"], "5"),
    (["compute", "fubini", "--n", "3", "--x", "1", "--lambda", "0"], "13"),
    (["compute", "polybernoulli", "--n", "2", "--r", "1", "--lambda", "1/2"], "5/12"),
    (["compute", "ffl", "--x", "2", "--n", "3", "--lambda", "1/2"], "3"),
    (["compute", "dlog", "--n", "2"], "-1/2 + 1/2*L"),
])
def test_compute(argv, expected):
    code, text = run(*argv)
    assert code == 0
    assert text == expected + "\n"


def test_table_json():
    code, text = run("table", "s2", "--max-n", "2", "--format", "json")
    assert code == 0
    assert json.loads(text)["rows"] == [["1"], ["0", "1"], ["0", "1 - L", "1"]]
    code, text = run("table", "s1", "--max-n", "2", "--format", "json")
    assert json.loads(text)["rows"][2] == ["0", "-1 + L", "1"]


def test_table_csv():
    code, text = run("table", "s2", "--max-n", "2")
    assert code == 0
    assert text.splitlines() == ["n,0,1,2", "0,1,,", "1,0,1,", "2,0,1 - L,1"]


def test_series():
    assert run("series", "dexp", "--lambda", "1", "--x", "1", "--order", "3") == (0, "1, 1, 0, 0\n")
    assert run("series", "dlog", "--lambda", "0", "--order", "3") == (0, "0, 1, -1/2, 1/3\n")
    code, text = run("series", "euler", "--lambda", "1/2", "--order", "2", "--format", "json")
    assert json.loads(text) == ["1", "-1/2", "1/8"]


@pytest.mark.parametrize("argv", [
    ["compute", "bogus"],
    ["compute", "bernoulli", "--n", "2"],
    ["compute", "s2", "--n", "2"],
    ["compute", "euler", "--n", "1", "--lambda", "x"],
    ["series", "bernoulli", "--order", "4"],
    ["table", "s2", "--max-n", "-1"],
    ["verify", "--suites", "nope"],
    ["verify", "--inject-fault", "ZZ"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert capsys.readouterr().err


def test_verify_writes_report(tmp_path):
    path = tmp_path / "r.json"
    code, text = run("verify", "--suites", "stirling,opcalc", "--max-n", "4", "--out", str(path))
    assert code == 0
    report = json.loads(path.read_text())
    assert report["schema"] == 1
    assert report["summary"]["failures"] == 0
    assert "checks passed" in text


def test_verify_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run("verify", "--suites", "transform", "--max-n", "3", "--seed", "7", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_inject_fault_flag(tmp_path):
    path = tmp_path / "f.json"
    code, _ = run("verify", "--suites", "transform", "--max-n", "3", "--inject-fault", "T4", "--out", str(path))
    assert code == 1
    bad = [r for r in json.loads(path.read_text())["records"] if not r["pass"]]
    assert bad and all(r["id"] == "T4" and r["lhs"] != r["rhs"] for r in bad)


def test_mutated_registry_fails(capsys):
    reg = dict(transform.REGISTRY)
    reg["L5"] = replace(reg["L5"], rhs=lambda p: 0)
    code, text = run("verify", "--suites", "transform", "--max-n", "3", registry=reg)
    assert code == 1
    report = json.loads(text)
    assert any(r["id"] == "L5" and not r["pass"] for r in report["records"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "degenseries", "compute", "s2", "--n", "3", "--k", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "3 - 3*L\n"
