import io

import pytest
from hypothesis import given, strategies as st

from onpminer import InputError
from onpminer.ingest import (
    TRAFFIC_RULE,
    BinningRule,
    discretize,
    dump_lines,
    load_lines,
    load_mapping,
    load_numeric_csv,
    synthetic_database,
)


def test_load_single_line():
    db = load_lines(io.StringIO("AACACCTC\n"))
    assert len(db) == 1 and len(db.sequences[0]) == 8
    assert db.alphabet == set("ACT")


def test_load_preserves_order_and_ids(tmp_path):
    f = tmp_path / "db.txt"
    f.write_text("# comment\nseq1\tAACACCTCAACGCTC\n\nGGA\n")
    db = load_lines(f)
    assert [s.id for s in db.sequences] == ["seq1", None]
    assert len(db.sequences[0]) == 15
    assert db.sequences[1].symbols == "GGA"


def test_load_with_alphabet_override():
    db = load_lines(io.StringIO("AC\n"), alphabet="ACGT")
    assert db.alphabet == set("ACGT")


def test_load_rejects_empty_and_missing(tmp_path):
    with pytest.raises(InputError):
        load_lines(io.StringIO("# only comments\n"))
    with pytest.raises(InputError):
        load_lines(tmp_path / "nope.txt")


def test_mapping_round_trip(tmp_path):
    m = tmp_path / "map.txt"
    m.write_text("rain=r\nsun=s\n")
    mapping = load_mapping(m)
    db = load_lines(io.StringIO("d1\train sun, sun\n"), mapping=mapping)
    assert db.sequences[0].symbols == "rss"
    with pytest.raises(InputError):
        load_lines(io.StringIO("fog\n"), mapping=mapping)


def test_mapping_must_be_bijective():
    with pytest.raises(InputError):
        load_mapping(io.StringIO("a=x\nb=x\n"))


def test_dump_round_trip():
    db = load_lines(io.StringIO("s1\tACG\nTT\n"))
    again = load_lines(io.StringIO(dump_lines(db)))
    assert [(s.id, s.symbols) for s in again.sequences] == [(s.id, s.symbols) for s in db.sequences]


@pytest.mark.parametrize("value, label", [(0, "a"), (500, "a"), (1000, "a"), (1001, "b"), (2000, "b"), (7000, "g")])
def test_traffic_bins(value, label):
    assert TRAFFIC_RULE.label(value) == label


def test_lower_boundary_rule():
    rule = BinningRule(1000, 0, "abcdefg", boundary="lower")
    assert rule.label(1000) == "b"
    assert rule.label(7000) == "g"


def test_out_of_range_reports_position():
    with pytest.raises(InputError, match="position 3"):
        discretize([10, 20, 7001], TRAFFIC_RULE)
    with pytest.raises(InputError):
        discretize([-1], TRAFFIC_RULE)


@given(st.floats(0, 7000), st.floats(0, 7000))
def test_binning_monotone(x, y):
    lo, hi = sorted((x, y))
    assert TRAFFIC_RULE.label(lo) <= TRAFFIC_RULE.label(hi)


def test_wide_csv():
    db = load_numeric_csv(io.StringIO("road1,500,1500,6500\n200,3000\n"), TRAFFIC_RULE)
    assert [(s.id, s.symbols) for s in db.sequences] == [("road1", "abg"), (None, "ac")]


def test_long_csv_sorted_by_time():
    text = "station,hour,volume\nx,2,1500\nx,1,100\ny,1,6999\n"
    db = load_numeric_csv(io.StringIO(text), TRAFFIC_RULE, group_by="station", time_col="hour", value_col="volume")
    assert [(s.id, s.symbols) for s in db.sequences] == [("x", "ab"), ("y", "g")]


def test_long_csv_missing_column():
    with pytest.raises(InputError):
        load_numeric_csv(io.StringIO("a,b\n1,2\n"), TRAFFIC_RULE, group_by="a", value_col="volume")


def test_synthetic_is_reproducible_and_nested():
    small = synthetic_database(2500, seed=3)
    big = synthetic_database(5000, seed=3)
    assert small.total_length == 2500
    assert [s.symbols for s in big.sequences[:2]] == [s.symbols for s in small.sequences[:2]]
    assert small.alphabet == set("abcdefgh")
