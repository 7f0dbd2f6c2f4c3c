import json
import shlex

import pytest

from linewalker.artifacts import load_fit_csv, load_suite_csv, load_trace
from linewalker.cli import main


def test_run_benchmark(tmp_path, capsys):
    assert main(["run", "--algo", "full", "--fn", "shekel", "--budget", "30", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "solved=True" in out and "best_f=" in out
    rec = load_trace(tmp_path / "shekel_full_b30.trace.json")
    assert len(rec.evaluations) == 30 and rec.solved is True
    fit = load_fit_csv(tmp_path / "shekel_full_b30.fit.csv")
    assert len(fit.index) == 5000 and fit.sampled.sum() == 30


def test_run_snapshots(tmp_path):
    args = ["run", "--algo", "pure", "--fn", "rastrigin", "--budget", "50", "--n", "1000", "--snapshots"]
    assert main(args + ["--out", str(tmp_path)]) == 0
    rec = load_trace(tmp_path / "rastrigin_pure_b50.trace.json")
    snaps = sorted((tmp_path / "rastrigin_pure_b50.snapshots").iterdir())
    assert len(snaps) == rec.iterations > 0


def test_run_hunter(tmp_path, capsys):
    args = ["run", "--algo", "hunter", "--fn", "rastrigin", "--n", "1000", "--budget", "1000"]
    assert main(args + ["--out", str(tmp_path)]) == 0
    assert "evals=53" in capsys.readouterr().out


def test_run_oracle_negative_coordinates(tmp_path, plateau_cmd):
    cmd = shlex.join(plateau_cmd)
    args = ["run", "--algo", "full", "--oracle", cmd, "--dim", "2", "--from", "-2,-7", "--to", "4,5", "--budget", "20"]
    assert main(args + ["--out", str(tmp_path)]) == 0
    rec = load_trace(tmp_path / "oracle_full_b20.trace.json")
    assert rec.solved is None and len(rec.evaluations) == 20
    assert rec.config["x_start"] == [-2.0, -7.0]


def test_run_oracle_failure_exit_2(tmp_path, script):
    cmd = shlex.join(script("bad.py", "import sys\nfor l in sys.stdin:\n    print('nan', flush=True)\n"))
    args = ["run", "--oracle", cmd, "--dim", "1", "--from", "0", "--to", "1", "--out", str(tmp_path)]
    assert main(args) == 2


@pytest.mark.parametrize(
    "args",
    [
        ["run", "--fn", "nope"],
        ["run", "--fn", "shekel", "--budget", "5"],
        ["run", "--fn", "shekel", "--algo", "fancy"],
        ["run", "--oracle", "x"],
        ["run", "--oracle", "x", "--dim", "2", "--from", "0", "--to", "1,1"],
        ["run", "--fn", "shekel", "--dim", "2"],
        ["run"],
        ["suite", "--only", "nope"],
        ["suite", "--budgets", "a,b"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(args, tmp_path):
    try:
        code = main(args + ["--out", str(tmp_path)])
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_suite_subset(tmp_path, capsys):
    args = ["suite", "--only", "shekel,rastrigin", "--budgets", "20,50", "--out", str(tmp_path), "--seedless"]
    assert main(args) == 0
    out = capsys.readouterr().out
    assert "byte-identical" in out and "fraction_solved" in out
    rows, config = load_suite_csv(tmp_path / "suite.csv")
    assert {(r.function, r.algorithm, r.budget) for r in rows} == {
        (f, a, b) for f in ("shekel", "rastrigin") for a in ("full", "pure") for b in (20, 50)
    }
    assert all(r.evals_used == r.budget for r in rows)
    assert config["budgets"] == [20, 50]
    assert len(list((tmp_path / "traces").glob("*.json"))) == 8
    header = (tmp_path / "fraction_solved.csv").read_text().splitlines()[1]
    assert header == "algorithm,20,50"


def test_suite_with_hunter_and_workers(tmp_path):
    args = ["suite", "--only", "levy", "--budgets", "20", "--algos", "hunter,full", "--workers", "2"]
    assert main(args + ["--out", str(tmp_path)]) == 0
    rows, _ = load_suite_csv(tmp_path / "suite.csv")
    assert [r.algorithm for r in rows] == ["hunter", "full"]
    trace = json.loads((tmp_path / "traces" / "levy_hunter_b20.json").read_text())
    assert len(trace["evaluations"]) <= 20
