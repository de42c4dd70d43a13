import csv
import io
import json

import pytest

from onpminer.cli import EXIT_INPUT, EXIT_OK, EXIT_USAGE, run

from conftest import EX3, EX3_FREQUENT, EX8


@pytest.fixture
def ex3_file(tmp_path):
    f = tmp_path / "ex3.txt"
    f.write_text(EX3 + "\n")
    return str(f)


@pytest.fixture
def ex8_file(tmp_path):
    f = tmp_path / "ex8.txt"
    f.write_text(EX8 + "\n")
    return str(f)


def test_mine_json(ex3_file, capsys):
    assert run(["mine", "--input", ex3_file, "--gap", "0,1", "--minsup", "2", "--alphabet", "ACGT"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert {r["pattern"] for r in doc["patterns"]} == EX3_FREQUENT
    assert doc["config"]["minsup"] == 2


def test_mine_stats_join_only(ex8_file, capsys):
    args = ["mine", "--input", ex8_file, "--gap", "0,2", "--minsup", "3", "--alphabet", "ACGT",
            "--strategy", "join-only", "--stats"]
    assert run(args) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    checked = {row["len"]: row["checked"] for row in doc["stats"]["levels"]}
    assert checked[2] == 20 and checked[3] == 27


def test_json_and_csv_agree(ex8_file, capsys):
    base = ["mine", "--input", ex8_file, "--gap", "0,2", "--minsup", "3"]
    run(base)
    as_json = {(r["pattern"], r["support"]) for r in json.loads(capsys.readouterr().out)["patterns"]}
    run(base + ["--emit", "csv"])
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert {(r["pattern"], int(r["support"])) for r in rows} == as_json
    assert list(rows[0]) == ["pattern", "length", "support", "is_negative"]


def test_ascii_output(ex3_file, capsys):
    run(["mine", "--input", ex3_file, "--gap", "0,1", "--minsup", "2", "--alphabet", "ACGT", "--ascii", "--emit", "csv"])
    out = capsys.readouterr().out
    assert "A[0,1]!GC" in out and "¬" not in out


def test_support_occurrences(ex8_file, capsys):
    assert run(["support", "--input", ex8_file, "--gap", "0,2", "--pattern", "A[0,2]C[0,2]¬GC"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["support"] == 3
    assert doc["per_sequence"][0]["occurrences"] == [[1, 3, 5], [4, 6, 8], [10, 13, 15]]


def test_support_ascii_pattern(ex8_file, capsys):
    assert run(["support", "--input", ex8_file, "--gap", "0,2", "--pattern", "A[0,2]C[0,2]!GC", "--emit", "csv"]) == EXIT_OK
    assert "1 3 5;4 6 8;10 13 15" in capsys.readouterr().out


def test_output_file(ex3_file, tmp_path):
    out = tmp_path / "out.csv"
    assert run(["mine", "--input", ex3_file, "--gap", "0,1", "--minsup", "2", "--emit", "csv", "--output", str(out)]) == EXIT_OK
    assert out.read_text().startswith("pattern,length,support,is_negative")


@pytest.mark.parametrize(
    "args",
    [
        ["mine", "--gap", "0,1", "--minsup", "2"],
        ["mine", "--gap", "2,1", "--minsup", "2"],
        ["mine", "--gap", "0,1", "--minsup", "0"],
        ["support", "--gap", "0,1", "--pattern", "A[0,2]C"],
    ],
)
def test_usage_errors(args, ex3_file, capsys):
    if "--input" not in args and args != ["mine", "--gap", "0,1", "--minsup", "2"]:
        args = args + ["--input", ex3_file]
    assert run(args) == EXIT_USAGE


def test_input_errors(tmp_path, capsys):
    missing = str(tmp_path / "missing.txt")
    assert run(["mine", "--input", missing, "--gap", "0,1", "--minsup", "2"]) == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("AC\n")
    assert run(["mine", "--input", str(bad), "--gap", "0,1", "--minsup", "2", "--alphabet", "A"]) == EXIT_INPUT


def test_discretize(tmp_path, capsys):
    src = tmp_path / "v.csv"
    src.write_text("r1,500,1001,7000\n")
    assert run(["discretize", "--input", str(src), "--preset", "traffic"]) == EXIT_OK
    assert capsys.readouterr().out == "r1\tabg\n"
    src.write_text("r1,500,7001\n")
    assert run(["discretize", "--input", str(src), "--preset", "traffic"]) == EXIT_INPUT
    assert "position 2" in capsys.readouterr().err


def test_discretize_needs_rule(tmp_path):
    src = tmp_path / "v.csv"
    src.write_text("1,2\n")
    assert run(["discretize", "--input", str(src)]) == EXIT_USAGE


def test_mine_numeric_csv(tmp_path, capsys):
    src = tmp_path / "v.csv"
    src.write_text("r1,500,1500,500,1500,500\n")
    assert run(["mine", "--input", str(src), "--format", "csv", "--preset", "traffic",
                "--gap", "0,0", "--minsup", "2", "--emit", "csv"]) == EXIT_OK
    assert "a[0,0]b" in capsys.readouterr().out


def test_bench_with_plot(ex8_file, tmp_path, capsys):
    fig = tmp_path / "bench.png"
    args = ["bench", "--input", ex8_file, "--gap", "0,2", "--minsup", "3", "--alphabet", "ACGT",
            "--emit", "csv", "--timings", "--plot", str(fig)]
    assert run(args) == EXIT_OK
    rows = {r["strategy"]: r for r in csv.DictReader(io.StringIO(capsys.readouterr().out))}
    assert rows["enum-bfs"]["total"] == "400"
    assert rows["join-prune"]["total"] == "32"
    assert rows["frequent"]["total"] == "16"
    assert fig.stat().st_size > 0 and fig.read_bytes()[:4] == b"\x89PNG"


def test_bench_rejects_unknown_strategy(ex8_file):
    assert run(["bench", "--input", ex8_file, "--gap", "0,2", "--minsup", "3", "--strategies", "magic"]) == EXIT_USAGE
