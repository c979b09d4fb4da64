import subprocess
import sys

import pytest

from orbgrand.cli import main
from orbgrand.codes import rlc_random, write_alist


def test_sweep_writes_csv(tmp_path):
    out = tmp_path / "s.csv"
    rc = main(["sweep", "--code", "rlc:16,8,1", "--ebn0", "2:1:4", "--trials", "200", "--seed", "3", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# code=rlc:16,8,1 decoder=orbgrand")
    assert lines[1].split(",") == ["ebn0_db", "trials", "block_errors", "abandonments", "bler", "avg_queries_per_bit"]
    assert len(lines) == 5


def test_sweep_timing_column(tmp_path):
    out = tmp_path / "t.csv"
    main(["sweep", "--code", "rlc:16,8,1", "--ebn0", "3", "--trials", "50", "--timing", "--out", str(out)])
    assert out.read_text().splitlines()[1].endswith("wall_seconds")


def test_sweep_alist_and_hard(tmp_path, capsys):
    path = tmp_path / "code.alist"
    write_alist(rlc_random(20, 12, 2).H, path)
    rc = main(["sweep", "--code", f"alist:{path}", "--decoder", "hard-grand", "--ebn0", "4", "--trials", "100"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "decoder=hard-grand" in out and out.count("\n") == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--code", "rlc:16,8,1", "--ebn0", "5:1:4"],
        ["sweep", "--code", "nonsense", "--ebn0", "4"],
        ["sweep", "--code", "rlc:16,8,1", "--ebn0", "4", "--trials", "0"],
        ["sweep", "--code", "alist:/does/not/exist.alist", "--ebn0", "4"],
        ["sweep", "--code", "rlc:16,8,1", "--ebn0", "4", "--out", "/does/not/exist/out.csv"],
    ],
)
def test_config_errors_exit_nonzero(argv, capsys):
    assert main(argv) != 0
    assert "error" in capsys.readouterr().err


def test_scatter(tmp_path):
    out = tmp_path / "scatter.csv"
    rc = main(["scatter", "--n", "16", "--k", "8", "--codes", "4", "--ebn0", "4.5", "--trials", "200", "--fresh", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "code_seed,bler,avg_queries_per_bit"
    assert [ln.split(",")[0] for ln in lines[2:]] == ["0", "1", "2", "3", "fresh"]


def test_beta_fit(capsys):
    assert main(["beta-fit", "--n", "64", "--blocks", "200"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "rank_index,empirical_flip_prob,fitted_prob,beta"
    assert len(lines) == 66
    beta = float(lines[2].split(",")[3])
    assert beta > 0


def test_patterns(capsys):
    assert main(["patterns", "--n", "5", "--count", "6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1:] == [
        "1,0,0,,00000",
        "2,1,1,1,10000",
        "3,2,1,2,01000",
        "4,3,1,3,00100",
        "5,3,2,1 2,11000",
        "6,4,1,4,00010",
    ]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orbgrand", "sweep", "--code", "rlc:16,8,1", "--ebn0", "9:1:8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "empty" in proc.stderr
