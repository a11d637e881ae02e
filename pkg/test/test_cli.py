"""Tests for the pbbs command line."""

import io
import json

import pytest

import src.main as cli
from src.main import main

P = "2211221112122111221"
P_JSON = (
    '{"L":19,"d":2,"rows":[{"len":3,"rig":1},{"len":2,"rig":1},'
    '{"len":2,"rig":0},{"len":1,"rig":8},{"len":1,"rig":4}]}'
)
SPACETIME_FIRST = "2221111221121"
SPACETIME_LAST = "1122112221112"
SYMMETRIC_PATH = "12112211122211121112211111"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()


def test_evolve_fast(capsys):
    assert run(capsys, "evolve", "--path", P, "--l", "2", "--steps", "1000", "--fast") == (
        0, ["1211221112122211221"]
    )
    assert run(capsys, "evolve", "--path", P, "--l", "3", "--steps", "1000", "--fast", "--reduce") == (
        0, ["2112221211221112112"]
    )
    assert run(capsys, "evolve", "--path", SYMMETRIC_PATH, "--l", "3", "--steps", "130", "--fast") == (
        0, [SYMMETRIC_PATH]
    )


def test_evolve_iterated(capsys):
    assert run(capsys, "evolve", "--path", SPACETIME_FIRST, "--l", "3", "--steps", "9") == (0, [SPACETIME_LAST])
    assert run(capsys, "evolve", "--path", P, "--l", "2", "--steps", "0") == (0, [P])


def test_malformed_path_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["evolve", "--path", "1203", "--l", "2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["evolve", "--path", "12", "--l", "0"])


def test_trace(capsys):
    code, lines = run(capsys, "trace", "--path", SPACETIME_FIRST, "--l", "3", "--steps", "9")
    assert code == 0
    assert len(lines) == 10
    assert lines[0] == "t=0: 2 2 2 1 1 1 1 2 2 1 1 2 1"
    assert lines[-1].split(": ")[1].replace(" ", "") == SPACETIME_LAST
    assert run(capsys, "trace", "--path", "1111", "--l", "2", "--steps", "2")[1] == [
        "t=0: 1 1 1 1", "t=1: 1 1 1 1", "t=2: 1 1 1 1"
    ]


def test_scatter_and_unscatter(capsys):
    assert run(capsys, "scatter", "--path", P) == (0, [P_JSON])
    assert run(capsys, "unscatter", "--json", P_JSON) == (0, [P])
    assert run(capsys, "scatter", "--path", "111") == (0, ['{"L":3,"d":0,"rows":[]}'])


def test_unscatter_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(P_JSON + "\n"))
    assert run(capsys, "unscatter") == (0, [P])


def test_scatter_pretty(capsys):
    code, lines = run(capsys, "scatter", "--path", P, "--pretty")
    assert code == 0
    assert lines == ["2 +", "1 |###| 1", "3 |##|  1", "3 |##|  0", "9 |#|   8", "9 |#|   4"]


def test_scatter_negative_weight(capsys):
    assert run(capsys, "scatter", "--path", "2212")[0] == 2
    code, lines = run(capsys, "scatter", "--path", "2212", "--allow-omega")
    assert code == 0
    payload = json.loads(lines[0])
    assert payload["omega"] is True
    assert run(capsys, "unscatter", "--json", lines[0]) == (0, ["2212"])


def test_unscatter_rejects_bad_input(capsys):
    assert run(capsys, "unscatter", "--json", "{not json")[0] == 2
    bad = '{"L":19,"d":0,"rows":[{"len":2,"rig":0},{"len":2,"rig":15}]}'
    assert run(capsys, "unscatter", "--json", bad)[0] == 2


def test_period(capsys):
    assert run(capsys, "period", "--path", SPACETIME_FIRST, "--l", "3") == (0, ["273"])
    assert run(capsys, "period", "--path", SYMMETRIC_PATH, "--l", "3") == (0, ["260"])
    assert run(capsys, "period", "--path", SYMMETRIC_PATH, "--l", "3", "--fundamental") == (0, ["130"])
    code, lines = run(capsys, "period", "--path", SYMMETRIC_PATH, "--l", "3", "--explain")
    assert code == 0
    assert "LCM(1, 26, 65/9, 65/11)" in lines
    assert lines[-1] == "fundamental period = 130"


def test_count(capsys):
    code, lines = run(capsys, "count", "--L", "8", "--M", "4")
    assert code == 0
    assert lines == [
        "L=8 M=4 m=(4,0,0,0) Omega=2",
        "L=8 M=4 m=(2,1,0,0) Omega=24",
        "L=8 M=4 m=(1,0,1,0) Omega=32",
        "L=8 M=4 m=(0,2,0,0) Omega=4",
        "L=8 M=4 m=(0,0,0,1) Omega=8",
        "L=8 M=4 sum=70 binom=70",
    ]
    code, lines = run(capsys, "count", "--L", "6")
    assert code == 0
    assert [line for line in lines if "sum=" in line] == [
        "L=6 M=0 sum=1 binom=1",
        "L=6 M=1 sum=6 binom=6",
        "L=6 M=2 sum=15 binom=15",
        "L=6 M=3 sum=20 binom=20",
    ]
    assert run(capsys, "count", "--L", "8", "--M", "5")[0] == 2


def test_verify(capsys):
    code, lines = run(capsys, "verify", "--suite", "counting", "--L", "5")
    assert code == 0
    assert lines[0] == "1..4"
    assert all(line.startswith(f"ok {n} - counting: ") for n, line in enumerate(lines[1:], start=1))


def test_verify_reports_failures(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda name, L, seed: [("broken check", False)])
    code, lines = run(capsys, "verify", "--suite", "kkr")
    assert code == 1
    assert lines == ["1..1", "not ok 1 - kkr: broken check"]


def test_internal_failure_exit_code(capsys, monkeypatch):
    def failing(*args):
        raise AssertionError("no admissible offset")

    monkeypatch.setattr(cli, "fast_evolve", failing)
    assert run(capsys, "evolve", "--path", P, "--l", "2", "--fast")[0] == 1


def test_unknown_log_level_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["--log-level", "chatty", "count", "--L", "4"])
    assert info.value.code == 2


def test_rigged_configuration_json(capsys):
    highest = "1122111212211122122"
    rc_json = (
        '{"L":19,"rows":[{"len":3,"rig":1},{"len":2,"rig":1},'
        '{"len":2,"rig":0},{"len":1,"rig":8},{"len":1,"rig":4}]}'
    )
    assert run(capsys, "scatter", "--path", highest, "--rc") == (0, [rc_json])
    assert run(capsys, "unscatter", "--rc", "--json", rc_json) == (0, [highest])
    assert run(capsys, "scatter", "--path", P, "--rc")[0] == 2
    bad = '{"L":8,"rows":[{"len":1,"rig":7}]}'
    assert run(capsys, "unscatter", "--rc", "--json", bad)[0] == 2
