"""Loading sequence databases and discretizing numeric series."""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

from .core import InputError, Sequence, SequenceDatabase

Source = Union[str, Path, TextIO]


def _open(source: Source):
    if hasattr(source, "read"):
        return source, False
    try:
        return open(source, encoding="utf-8", newline=""), True
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from None


def load_mapping(source: Source) -> dict:
    """Read ``name=char`` lines mapping event names to single-character symbols.

    The mapping must be one-to-one.
    """
    fh, close = _open(source)
    try:
        mapping = {}
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            name, sep, sym = line.rpartition("=")
            name, sym = name.strip(), sym.strip()
            if not sep or not name or len(sym) != 1:
                raise InputError(f"mapping line {lineno}: expected name=char, got {line!r}")
            if name in mapping:
                raise InputError(f"mapping line {lineno}: {name!r} mapped twice")
            mapping[name] = sym
    finally:
        if close:
            fh.close()
    if len(set(mapping.values())) != len(mapping):
        raise InputError("mapping is not one-to-one: two names share a symbol")
    return mapping


def load_lines(source: Source, alphabet: Optional[Iterable[str]] = None, mapping: Optional[dict] = None) -> SequenceDatabase:
    """One sequence per line, optionally ``id<TAB>SYMBOLS``.

    Blank lines and lines starting with ``#`` are skipped. With ``mapping``, the
    symbol part is a whitespace- or comma-separated list of event names.
    """
    fh, close = _open(source)
    try:
        sequences = []
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            sid = None
            if "\t" in line:
                sid, line = line.split("\t", 1)
            if mapping is not None:
                names = line.replace(",", " ").split()
                try:
                    line = "".join(mapping[name] for name in names)
                except KeyError as exc:
                    raise InputError(f"line {lineno}: unmapped event {exc.args[0]!r}") from None
            else:
                line = line.strip()
            if not line:
                raise InputError(f"line {lineno}: empty sequence")
            sequences.append(Sequence(line, sid))
    except UnicodeDecodeError as exc:
        raise InputError(f"input is not UTF-8: {exc}") from None
    finally:
        if close:
            fh.close()
    if not sequences:
        raise InputError("no sequences in input")
    return SequenceDatabase(sequences, alphabet)


def dump_lines(db: SequenceDatabase, out: Optional[TextIO] = None) -> str:
    lines = [s.symbols if s.id is None else f"{s.id}\t{s.symbols}" for s in db.sequences]
    text = "".join(line + "\n" for line in lines)
    if out is not None:
        out.write(text)
    return text


@dataclass(frozen=True)
class BinningRule:
    """Equal-width bins starting at ``origin``, labelled in order.

    ``boundary="upper"`` puts a value sitting exactly on a bin edge into the lower bin
    (bin 0 is closed on both ends); ``"lower"`` puts it into the upper bin, with the
    top edge kept in the last bin.
    """

    bin_width: float
    origin: float
    labels: str
    boundary: str = "upper"

    def __post_init__(self):
        if not self.bin_width > 0:
            raise InputError("bin width must be positive")
        if not self.labels:
            raise InputError("need at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("bin labels must be distinct")
        if self.boundary not in ("upper", "lower"):
            raise InputError("boundary must be 'upper' or 'lower'")

    @property
    def upper(self) -> float:
        return self.origin + self.bin_width * len(self.labels)

    def bin_index(self, value: float) -> int:
        if not self.origin <= value <= self.upper:
            raise ValueError(value)
        x = (value - self.origin) / self.bin_width
        if self.boundary == "upper":
            k = math.ceil(x) - 1
        else:
            k = math.floor(x)
        return min(max(k, 0), len(self.labels) - 1)

    def label(self, value: float) -> str:
        return self.labels[self.bin_index(value)]


# Hourly traffic volume: a = 0-1000, b = 1001-2000, ..., g = 6001-7000.
TRAFFIC_RULE = BinningRule(1000, 0, "abcdefg")


def discretize(series: Iterable[float], rule: BinningRule, id: Optional[str] = None) -> Sequence:
    out = []
    for k, v in enumerate(series, 1):
        try:
            out.append(rule.label(float(v)))
        except ValueError:
            raise InputError(
                f"value {v} at position {k} outside [{rule.origin}, {rule.upper}]"
            ) from None
    return Sequence("".join(out), id)


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise InputError(f"not a number: {text!r}") from None


def _sort_key(text: str):
    try:
        return (0, float(text), "")
    except ValueError:
        return (1, 0.0, text)


def load_numeric_csv(
    source: Source,
    rule: BinningRule,
    group_by: Optional[str] = None,
    time_col: Optional[str] = None,
    value_col: Optional[str] = None,
) -> SequenceDatabase:
    """Discretize numeric CSV data into a sequence database.

    Wide form (no ``group_by``): each row is one series; a non-numeric first cell is
    taken as the series id. Long form: a header row, rows grouped by ``group_by`` in
    first-seen order and sorted within a group by ``time_col``; ``value_col`` holds the
    values.
    """
    fh, close = _open(source)
    try:
        if group_by is None:
            seqs = []
            for lineno, row in enumerate(csv.reader(fh), 1):
                cells = [c.strip() for c in row]
                if not any(cells) or cells[0].startswith("#"):
                    continue
                sid = None
                try:
                    float(cells[0])
                except ValueError:
                    sid, cells = cells[0], cells[1:]
                values = [_number(c) for c in cells if c]
                if not values:
                    raise InputError(f"row {lineno}: no values")
                try:
                    seqs.append(discretize(values, rule, sid))
                except InputError as exc:
                    raise InputError(f"row {lineno}: {exc}") from None
        else:
            if value_col is None:
                raise InputError("long-format CSV needs a value column")
            reader = csv.DictReader(fh)
            missing = {c for c in (group_by, time_col, value_col) if c} - set(reader.fieldnames or ())
            if missing:
                raise InputError(f"CSV lacks columns: {', '.join(sorted(missing))}")
            groups = {}
            for row in reader:
                groups.setdefault(row[group_by], []).append(row)
            seqs = []
            for sid, rows in groups.items():
                if time_col:
                    rows = sorted(rows, key=lambda r: _sort_key(r[time_col]))
                try:
                    seqs.append(discretize((_number(r[value_col]) for r in rows), rule, sid))
                except InputError as exc:
                    raise InputError(f"series {sid}: {exc}") from None
    finally:
        if close:
            fh.close()
    if not seqs:
        raise InputError("no series in input")
    return SequenceDatabase(seqs)


def synthetic_database(total_length: int, alphabet: str = "abcdefgh", seq_length: int = 1000, seed: int = 0) -> SequenceDatabase:
    """Reproducible Markov-chain sequences with skewed transitions, for benchmarking.

    Each symbol prefers a few successors and the last symbol is rare, so support
    varies widely across patterns.
    """
    rng = random.Random(seed)
    k = len(alphabet)
    weights = []
    for i in range(k):
        row = [rng.uniform(0.05, 1.0) for _ in range(k)]
        row[(i + 1) % k] += 4.0
        row[(i + 3) % k] += 1.0
        row[k - 1] *= 0.1
        weights.append(row)
    seqs = []
    remaining = total_length
    while remaining > 0:
        n = min(seq_length, remaining)
        cur = rng.randrange(k - 1)
        out = []
        for _ in range(n):
            out.append(alphabet[cur])
            cur = rng.choices(range(k), weights[cur])[0]
        seqs.append(Sequence("".join(out), f"syn{len(seqs) + 1}"))
        remaining -= n
    return SequenceDatabase(seqs, alphabet)
