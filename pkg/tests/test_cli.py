import json
import subprocess
import sys

import pytest

from makerbreaker.cli import parse_int_list, run, UsageError


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_play_example(capsys):
    code, out, _ = _run(capsys, "play", "--n", "5", "--a", "2", "--b", "3", "--maker", "maker.thm4", "--breaker", "breaker.thm3", "--seed", "1")
    assert code == 0
    rec = json.loads(out)
    assert rec["winner"] == "Breaker"
    assert set(rec) >= {"n", "a", "b", "win_condition", "maker", "breaker", "seed", "winner", "cause", "rounds", "history"}


def test_boxgame_forms(capsys):
    code, out, _ = _run(capsys, "boxgame", "--k", "2", "--t", "4", "--maker-bias", "2", "--breaker-bias", "1")
    d = json.loads(out)
    assert code == 0 and (d["f"], d["sufficient"], d["exact_winner"]) == (4, True, "BoxMaker")
    code, out, _ = _run(capsys, "boxgame", "2,4,2,1")
    assert json.loads(out)["f"] == 4
    code, out, _ = _run(capsys, "boxgame", "2,2,3;a=2;b=1", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("k,t,maker_bias")


def test_boxgame_size_guard(capsys):
    code, out, _ = _run(capsys, "boxgame", "10,100,2,1")
    assert code == 0 and json.loads(out)["exact_winner"] is None
    code, _, err = _run(capsys, "boxgame", "10,100,2,1", "--require-exact")
    assert code == 3 and "refused" in err


def test_bounds_example(capsys):
    code, out, _ = _run(capsys, "bounds", "--n", "1000000", "--a", "2")
    d = json.loads(out)
    assert code == 0 and d["regime"] == "i" and d["dropped_terms"]


def test_solve_variants(capsys):
    code, out, _ = _run(capsys, "solve", "--n", "4", "--a", "1", "--b", "1")
    assert code == 0 and json.loads(out)["winner"] == "Maker"
    code, out, _ = _run(capsys, "solve", "--n", "4", "--a", "1", "--b", "1", "--pmd")
    assert json.loads(out)["win_condition"] == "PositiveMinDegree"
    code, out, _ = _run(capsys, "solve", "--n", "4", "--a", "1", "--b", "1", "--fixed", "maker.thm4")
    assert json.loads(out)["winner"] == "Maker"
    code, out, _ = _run(capsys, "solve", "--n", "3", "--threshold")
    assert json.loads(out)["b0"] == 0
    code, out, _ = _run(capsys, "solve", "--n", "4", "--threshold", "--a-list", "1,2")
    assert [d["a"] for d in json.loads(out)] == [1, 2]


def test_solve_refused(capsys):
    code, out, err = _run(capsys, "solve", "--n", "7", "--a", "1", "--b", "1")
    assert code == 3 and out == "" and "refused" in err
    code, _, _ = _run(capsys, "solve", "--n", "5", "--a", "1", "--b", "1", "--max-states", "5")
    assert code == 3


@pytest.mark.parametrize(
    "argv,token",
    [
        (["sweep", "--n", "20", "--a", "1", "--b", "1:x"], "1:x"),
        (["play", "--n", "5", "--b", "2", "--maker", "maker.nope"], "maker.nope"),
        (["play", "--n", "5", "--b", "2", "--breaker", "maker.thm4"], "maker.thm4"),
        (["sweep", "--n", "20", "--a", "1", "--b", "2", "--pairings", "maker.thm4"], "maker.thm4"),
        (["random", "--n", "20", "--b", "5", "--seed", "-3"], "-3"),
        (["frobnicate"], "frobnicate"),
        (["play", "--n", "5"], "--b"),
    ],
)
def test_usage_errors(capsys, argv, token):
    code, out, err = _run(capsys, *argv)
    assert code == 2 and out == ""
    assert token in err


def test_int_list_grammar():
    assert parse_int_list("10:60:5") == list(range(10, 60, 5))
    assert parse_int_list("1,2,4") == [1, 2, 4]
    assert parse_int_list("1,5:8") == [1, 5, 6, 7]
    with pytest.raises(UsageError):
        parse_int_list("1:2:0")


def test_sweep_csv_and_out_file(capsys, tmp_path):
    target = tmp_path / "s.csv"
    code, out, _ = _run(capsys, "sweep", "--n", "12", "--a", "1,2", "--b", "2:6:2", "--trials", "2", "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0].startswith("n,a,b,regime,lower,upper,cert_thm1,cert_thm2,cert_thm3,cert_thm4")
    assert len(lines) == 1 + 2 * 2
    code, out, _ = _run(capsys, "sweep", "--n", "12", "--a", "1", "--b", "5:5")
    assert code == 0 and len(out.splitlines()) == 1


def test_human_view_matches_json(capsys):
    _, js, _ = _run(capsys, "random", "--n", "40", "--b", "3", "--trials", "5", "--seed", "2")
    _, human, _ = _run(capsys, "random", "--n", "40", "--b", "3", "--trials", "5", "--seed", "2", "--format", "human")
    d = json.loads(js)
    for key, value in d.items():
        assert key in human


def test_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("MAKERBREAKER_JOBS", "2")
    code, out2, _ = _run(capsys, "sweep", "--n", "10", "--a", "1", "--b", "2,3", "--trials", "2", "--seed", "3")
    monkeypatch.setenv("MAKERBREAKER_JOBS", "1")
    code, out1, _ = _run(capsys, "sweep", "--n", "10", "--a", "1", "--b", "2,3", "--trials", "2", "--seed", "3")
    assert out1 == out2
    monkeypatch.setenv("MAKERBREAKER_JOBS", "lots")
    code, _, err = _run(capsys, "sweep", "--n", "10", "--a", "1", "--b", "2", "--trials", "1")
    assert code == 2 and "MAKERBREAKER_JOBS" in err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "makerbreaker.cli", "bounds", "--n", "100", "--a", "1:3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)) == 2
