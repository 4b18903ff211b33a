import json
import pathlib
import re
import subprocess
import sys

import pytest

from altorbits.cli import main

ROOT = pathlib.Path(__file__).resolve().parent.parent
SMITH_SPEC = str(ROOT / "specs" / "smith.spec")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orbit_dot(capsys):
    code, out, _ = run(capsys, "orbit", "1", "19", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert len(re.findall(r'^\s+"\(\d+,\d+\)" \[label=', out, re.M)) == 16
    bold = re.findall(r"->.*\[style=bold\]", out)
    assert len(bold) == 4
    assert '"(4,16)" [label="(4,16) g=4", peripheries=2];' in out
    assert '"(1,19)" -> "(2,18)";' in out
    assert len(re.findall(r"->", out)) == 16


def test_orbit_text(capsys):
    code, out, _ = run(capsys, "orbit", "5", "15")
    assert code == 0
    assert "3 node(s)" in out
    assert "bottom: fixed point (10,10)" in out


def test_orbit_single_point(capsys):
    code, out, _ = run(capsys, "orbit", "1", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["nodes"] == [[1, 1]] and data["bottom"] == [[1, 1]] and data["edges"] == []


def test_orbit_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "orbit", "1", "19")
    data = json.loads(out)
    assert data["shape"] == {"size": 16, "bottom_size": 4, "a": 2, "singleton_bottom": False,
                             "predicted_size": 16}
    assert data["bottom"] == [[4, 16], [8, 12], [16, 4], [12, 8]]
    assert len(data["edges"]) == 16


def test_flip_worked_example(capsys):
    code, out, _ = run(capsys, "flip", "435", "137")
    assert code == 1
    assert out.splitlines()[0] == "(435,137) does not flip"
    assert "ω(435,137) = (298,274)" in out and "ω(298,274) = (24,548)" in out
    assert "odd core: (6,137)" in out
    assert "143 = 11·13" in out


def test_flip_remark_and_trivial(capsys):
    assert run(capsys, "flip", "1", "16")[0] == 0
    code, out, _ = run(capsys, "flip", "4", "4")
    assert code == 0 and "trivial_equal" in out


def test_flip_both_methods(capsys):
    code, out, _ = run(capsys, "flip", "1", "842", "--method", "both", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["agree"] and data["flips"]
    assert data["brute"]["method"] == "orbit_enumeration"
    code, out, _ = run(capsys, "flip", "160216181", "6", "--method", "brute", "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["brute"] == {"flips": False, "method": "cycle_walk"}


@pytest.mark.parametrize("n, code, words", [(5, 0, "well-defined"), (6, 1, "not well-defined")])
def test_power(capsys, n, code, words):
    got, out, _ = run(capsys, "power", str(n))
    assert got == code
    assert out.startswith(f"x^{n}: {words}")


def test_power_5_single_class(capsys):
    _, out, _ = run(capsys, "power", "5", "--format", "json")
    assert json.loads(out)["class_sizes"] == [14]


def test_power_13(capsys):
    code, out, _ = run(capsys, "power", "13", "--format", "json")
    data = json.loads(out)
    assert code == 1 and not data["well_defined"] and data["class_count"] == 232


def test_power_cap(capsys):
    code, _, err = run(capsys, "power", "14")
    assert code == 2 and "cap" in err


def test_nonflip_window(capsys):
    code, out, _ = run(capsys, "nonflip-window", "2")
    assert code == 0
    assert out.splitlines()[0] == "r = 90"
    assert "none of the pairs flips" in out


@pytest.mark.parametrize("n, code", [(8, 0), (5, 0), (7, 1), (9, 1)])
def test_complete(capsys, n, code):
    got, out, _ = run(capsys, "complete", str(n))
    assert got == code
    assert ("is complete" in out) == (code == 0)


def test_loop_check_smith(capsys):
    code, out, _ = run(capsys, "loop-check", SMITH_SPEC, "--n", "20")
    assert code == 0
    assert "all laws hold" in out
    assert "x0 has no two-sided inverse" in out


def test_loop_check_json(capsys):
    code, out, _ = run(capsys, "loop-check", SMITH_SPEC, "--n", "4", "--b", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["x0"]["two_sided_inverse"] is None
    assert data["x0"]["right_inverse"] == "(0)·x_1^1"
    assert data["x0"]["left_inverse"] == "(1)·x_1^1"


@pytest.mark.parametrize("argv", [
    ["orbit", "1", "19", "--max-n", "10"],
    ["flip", "1", "2", "--format", "dot"],
    ["orbit", "0", "3"],
    ["bogus"],
    [],
    ["loop-check", "/nonexistent.spec"],
    ["complete", "1"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_bad_spec_file(capsys, tmp_path):
    bad = tmp_path / "bad.spec"
    bad.write_text("free_rank = 1\ns0 = 1\ns1 = 1\n")
    code, _, err = run(capsys, "loop-check", str(bad))
    assert code == 2 and "differ" in err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.startswith("altorbits ")


COMMANDS = [
    ["orbit", "1", "19"],
    ["orbit", "1", "19", "--format", "dot"],
    ["flip", "435", "137", "--method", "both"],
    ["complete", "17"],
    ["power", "7"],
    ["nonflip-window", "3"],
    ["loop-check", SMITH_SPEC, "--n", "6", "--b", "1"],
]


@pytest.mark.parametrize("argv", COMMANDS)
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


@pytest.mark.parametrize("argv", [a for a in COMMANDS if "dot" not in a])
def test_json_round_trip(capsys, argv):
    _, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    again = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)
    assert again == out.rstrip("\n")
    assert json.loads(again) == data


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "altorbits", "orbit", "5", "15", "--format", "json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["bottom"] == [[10, 10]]
