"""Command-line front end: ``onpminer mine|support|discretize|bench``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import replace

from .core import (
    ConfigError,
    GapConstraint,
    InputError,
    MiningConfig,
    ONPError,
    PatternSyntaxError,
    SequenceDatabase,
    Strategy,
    parse_pattern,
)
from .ingest import TRAFFIC_RULE, BinningRule, dump_lines, load_lines, load_mapping, load_numeric_csv
from .matcher import count_support_db
from .miner import mine
from .report import comparison_csv, comparison_json, format_stats, plot_comparison, records, to_csv, to_json

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("onpminer")


class UsageError(Exception):
    pass


def _gap(text):
    try:
        return GapConstraint.parse(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_input(p):
    p.add_argument("--input", required=True, help="input file ('-' for stdin)")
    p.add_argument("--format", choices=["lines", "csv"], default="lines")
    p.add_argument("--alphabet", help="override the alphabet, e.g. ACGT")
    p.add_argument("--mapping", help="name=char file for multi-character event names (lines format)")
    _add_binning(p)


def _add_binning(p):
    g = p.add_argument_group("numeric CSV binning")
    g.add_argument("--preset", choices=["traffic"], help="named binning rule")
    g.add_argument("--bin-width", type=float)
    g.add_argument("--origin", type=float, default=0.0)
    g.add_argument("--labels", help="bin labels in order, e.g. abcdefg")
    g.add_argument("--boundary", choices=["upper", "lower"], default="upper",
                   help="which bin a value on an edge joins (default: lower bin, inclusive upper)")
    g.add_argument("--group-by", help="long format: series id column")
    g.add_argument("--time-col", help="long format: ordering column")
    g.add_argument("--value-col", help="long format: value column")


def _add_output(p):
    p.add_argument("--output", help="write data here instead of stdout")
    p.add_argument("--emit", choices=["json", "csv"], default="json")
    p.add_argument("--ascii", action="store_true", help="print negations as '!' instead of '¬'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onpminer", description="Mine one-off negative sequential patterns.")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mine", help="mine all frequent patterns")
    _add_input(m)
    m.add_argument("--gap", type=_gap, required=True, help="M,N")
    m.add_argument("--minsup", type=int, required=True)
    m.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.JOIN_PRUNE.value)
    m.add_argument("--max-length", type=int)
    m.add_argument("--stats", action="store_true", help="include per-level candidate counts and timings")
    m.add_argument("--occurrences", action="store_true", help="include per-sequence supports and occurrences")
    m.add_argument("--threads", type=int, default=1)
    m.add_argument("--seed", type=int, help="accepted for interface stability; mining is deterministic")
    _add_output(m)

    s = sub.add_parser("support", help="support and occurrences of one pattern")
    _add_input(s)
    s.add_argument("--gap", type=_gap, required=True)
    s.add_argument("--pattern", required=True, help="e.g. 'A[0,2]C[0,2]!GC'")
    _add_output(s)

    d = sub.add_parser("discretize", help="turn numeric CSV into a line-sequence file")
    d.add_argument("--input", required=True)
    _add_binning(d)
    d.add_argument("--output")

    b = sub.add_parser("bench", help="compare candidate counts of all strategies")
    _add_input(b)
    b.add_argument("--gap", type=_gap, required=True)
    b.add_argument("--minsup", type=int, required=True)
    b.add_argument("--max-length", type=int)
    b.add_argument("--strategies", default=",".join(s.value for s in Strategy))
    b.add_argument("--timings", action="store_true", help="add a seconds column")
    b.add_argument("--plot", help="write a comparison figure (png/pdf/svg) here")
    b.add_argument("--threads", type=int, default=1)
    _add_output(b)
    return parser


def _rule(args) -> BinningRule:
    if args.preset == "traffic":
        return replace(TRAFFIC_RULE, boundary=args.boundary)
    if args.bin_width is None or not args.labels:
        raise UsageError("numeric input needs --preset or both --bin-width and --labels")
    return BinningRule(args.bin_width, args.origin, args.labels, args.boundary)


def _source(path):
    if path == "-":
        return io.TextIOWrapper(sys.stdin.buffer, encoding="utf-8")
    return path


def _load(args):
    if args.format == "csv":
        db = load_numeric_csv(_source(args.input), _rule(args), args.group_by, args.time_col, args.value_col)
        if args.alphabet:
            db = SequenceDatabase(db.sequences, args.alphabet)
        return db
    mapping = load_mapping(args.mapping) if args.mapping else None
    return load_lines(_source(args.input), args.alphabet, mapping)


def _write(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args, strategy) -> MiningConfig:
    if args.minsup < 1:
        raise UsageError("--minsup must be >= 1")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    return MiningConfig(
        minsup=args.minsup,
        gap=args.gap,
        strategy=strategy,
        alphabet_override=frozenset(args.alphabet) if args.alphabet else None,
        parallelism=args.threads,
        max_length=args.max_length,
    )


def cmd_mine(args) -> int:
    config = _config(args, Strategy(args.strategy))
    db = _load(args)
    log.info("loaded %d sequences, total length %d", len(db), db.total_length)
    report = mine(db, config)
    try:
        report.check()
    except AssertionError as exc:
        print(f"onpminer: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    recs = records(report, db, occurrences=args.occurrences, ascii=args.ascii)
    if args.emit == "json":
        _write(args, to_json(report, recs, stats=args.stats))
    else:
        _write(args, to_csv(recs))
        if args.stats:
            sys.stderr.write(format_stats(report))
    log.info("%d frequent patterns", len(recs))
    return EXIT_OK


def cmd_support(args) -> int:
    db = _load(args)
    sigma = set(args.alphabet) if args.alphabet else db.alphabet
    pattern = parse_pattern(args.pattern, args.gap, sigma)
    res = count_support_db(db, pattern)
    text = pattern.text(args.ascii)
    if args.emit == "json":
        doc = {
            "pattern": text,
            "support": res.total,
            "per_sequence": [
                {"id": sid, "support": count, "occurrences": [list(o) for o in occs]}
                for sid, count, occs in res.per_sequence
            ],
        }
        _write(args, json.dumps(doc, ensure_ascii=False, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pattern", "sequence", "support", "occurrences"])
        for sid, count, occs in res.per_sequence:
            w.writerow([text, sid, count, ";".join(" ".join(map(str, o)) for o in occs)])
        _write(args, buf.getvalue())
    return EXIT_OK


def cmd_discretize(args) -> int:
    db = load_numeric_csv(_source(args.input), _rule(args), args.group_by, args.time_col, args.value_col)
    _write(args, dump_lines(db))
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        strategies = [Strategy(s.strip()) for s in args.strategies.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    base = _config(args, Strategy.JOIN_PRUNE)
    db = _load(args)
    reports = {}
    for strategy in strategies:
        reports[strategy] = mine(db, replace(base, strategy=strategy))
        log.info("%s: %.3fs", strategy.value, reports[strategy].timings["total"])
    sets = {s: r.pattern_set() for s, r in reports.items()}
    first = next(iter(sets.values()))
    for s, found in sets.items():
        if found != first:
            log.warning("%s found a different frequent set (%d vs %d patterns)", s.value, len(found), len(first))
    if args.emit == "json":
        _write(args, comparison_json(reports, args.timings))
    else:
        _write(args, comparison_csv(reports, args.timings))
    if args.plot:
        plot_comparison(reports, args.plot)
    return EXIT_OK


COMMANDS = {"mine": cmd_mine, "support": cmd_support, "discretize": cmd_discretize, "bench": cmd_bench}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, PatternSyntaxError) as exc:
        print(f"onpminer: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, ONPError, OSError) as exc:
        print(f"onpminer: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
