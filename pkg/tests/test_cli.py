import json
import subprocess
import sys
from pathlib import Path

import pytest

from gradedringlab import cleanness as K
from gradedringlab.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from gradedringlab.specfile import load_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main([*argv, "--no-timestamp"])
    out = capsys.readouterr()
    return code, out.out, out.err


def spec(name):
    return str(SPECS / name)


def test_build_ok(capsys):
    code, out, _ = run(capsys, "build", "--spec", spec("checkerboard.spec"))
    rep = json.loads(out)
    assert code == EXIT_OK
    assert list(rep)[:5] == ["schema", "tool", "command", "input", "result"]
    assert "timestamp" not in rep and rep["command"] == "build"


def test_timestamp_present_by_default(capsys):
    assert main(["catalog"]) == EXIT_OK
    assert "timestamp" in json.loads(capsys.readouterr().out)


def test_analyze_witnesses_reverify(capsys):
    code, out, _ = run(capsys, "analyze", "--spec", spec("checkerboard.spec"))
    assert code == EXIT_OK
    res = json.loads(out)["result"]
    GR = load_spec(spec("checkerboard.spec")).target
    w = res["verdicts"]["graded-nil-clean"]["witness"]
    assert res["verdicts"]["graded-nil-clean"]["holds"] is False
    assert GR.ring.parse(w["value"]) == w["element"]
    assert GR.homogeneous[w["element"]] and not K.graded_nil_clean_element(GR, w["element"])
    assert res["verdicts"]["re-nil-clean"]["holds"] is True
    assert res["radicals"]["Jg"]["maximal_homogeneous_right_ideals"] == 2


def test_analyze_element_report(capsys):
    code, out, _ = run(capsys, "analyze", "--spec", spec("checkerboard.spec"), "--element", "6", "--element", "1")
    el = json.loads(out)["result"]["elements"]
    assert [e["element"] for e in el] == [6, 1]
    assert el[0]["unit"] and el[0]["graded_nil_clean_decompositions"] == []
    assert el[1]["idempotent"] and len(el[1]["graded_nil_clean_decompositions"]) == 1


def test_analyze_bad_element_is_input_error(capsys):
    code, _, err = run(capsys, "analyze", "--spec", spec("checkerboard.spec"), "--element", "99")
    assert code == EXIT_INPUT and err.startswith("gradedringlab:")


def test_check_spec_counterexample(capsys):
    code, out, _ = run(capsys, "check", "--spec", spec("checkerboard.spec"))
    res = json.loads(out)["result"]
    assert code == EXIT_OK
    assert res["summary"]["FAILED"] == 0 and res["summary"]["failed-expected"] == 1


def test_check_catalog_subset_and_table(capsys):
    code, out, _ = run(capsys, "check", "--catalog", "Z4-trivial-C2,T2-F2-trivial", "--checks",
                       "fixture-flags,ring-axioms", "--table")
    assert code == EXIT_OK
    lines = [ln for ln in out.splitlines() if "fixture-flags" in ln or "ring-axioms" in ln]
    assert len(lines) == 4 and all("holds" in ln for ln in lines)


def test_invalid_grading_exits_one(capsys):
    code, out, err = run(capsys, "build", "--spec", spec("bad-direct-sum.spec"))
    rep = json.loads(out)
    assert code == EXIT_FAIL and rep["result"]["error"]["kind"] == "NotDirectSum"
    assert err


def test_malformed_spec_exits_two(tmp_path, capsys):
    p = tmp_path / "bad.spec"
    p.write_text("gradedringlab-spec v1\nring R = zmod(4\n")
    code, out, _ = run(capsys, "build", "--spec", str(p))
    err = json.loads(out)["result"]["error"]
    assert code == EXIT_INPUT and err["kind"] == "SpecError" and err["witness"]["line"] == 2


@pytest.mark.parametrize("argv", [
    ["build", "--spec", "/nonexistent.spec"],
    ["check", "--catalog", "no-such-fixture"],
    ["check", "--catalog", "all", "--checks", "bogus"],
    ["check"],
])
def test_input_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_INPUT


def test_cap_exceeded_exits_three(capsys):
    code, out, _ = run(capsys, "build", "--spec", spec("checkerboard.spec"), "--max-elements", "8")
    assert code == EXIT_CAP
    assert json.loads(out)["result"]["error"]["kind"] == "CapExceeded"


def test_search_gradings(capsys):
    code, out, _ = run(capsys, "search-gradings", "--spec", spec("m2-f2-c2.spec"))
    res = json.loads(out)["result"]
    assert code == EXIT_OK
    assert len(res["gradings"]) == 5 and res["counterexamples"] == 3


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog")
    res = json.loads(out)["result"]
    assert code == EXIT_OK and len(res["fixtures"]) >= 15 and "implication-1" in res["checks"]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "catalog", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["command"] == "catalog"


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "gradedringlab.cli", "catalog", "--no-timestamp"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["schema"] == "gradedringlab-report v1"
