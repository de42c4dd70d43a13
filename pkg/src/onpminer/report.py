"""Serializing mining results and strategy comparisons: JSON, CSV and figures."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

from .core import Strategy
from .matcher import count_support_db
from .miner import MiningReport

CSV_COLUMNS = ["pattern", "length", "support", "is_negative"]


@dataclass
class OutputRecord:
    pattern: str
    length: int
    support: int
    is_negative: bool
    per_sequence: Optional[list] = None

    def as_dict(self) -> dict:
        d = {"pattern": self.pattern, "length": self.length, "support": self.support, "is_negative": self.is_negative}
        if self.per_sequence is not None:
            d["per_sequence"] = self.per_sequence
        return d


def records(report: MiningReport, db=None, occurrences: bool = False, ascii: bool = False) -> list:
    """One record per frequent pattern; ``occurrences`` needs ``db`` and re-runs the matcher."""
    out = []
    for p, sup in report.patterns():
        per_seq = None
        if occurrences:
            res = count_support_db(db, p)
            per_seq = [
                {"id": sid, "support": count, "occurrences": [list(o) for o in occs]}
                for sid, count, occs in res.per_sequence
            ]
        out.append(OutputRecord(p.text(ascii), len(p), sup, p.is_negative, per_seq))
    return out


def level_rows(report: MiningReport) -> list:
    return [{"len": level, **report.levels[level].as_dict()} for level in sorted(report.levels)]


def stats_block(report: MiningReport) -> dict:
    levels = level_rows(report)
    return {
        "levels": levels,
        "totals": {
            key: sum(row[key] for row in levels if row["len"] >= 2)
            for key in ("generated", "checked", "pruned", "frequent")
        },
        "timings_sec": {k: round(v, 6) for k, v in report.timings.items()},
    }


def to_json(report: MiningReport, recs: list, stats: bool = False) -> str:
    doc = {
        "config": report.config.as_dict(),
        "levels": [{k: row[k] for k in ("len", "generated", "checked", "pruned", "frequent")} for row in level_rows(report)],
        "patterns": [r.as_dict() for r in recs],
    }
    if stats:
        doc["stats"] = stats_block(report)
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def to_csv(recs: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in recs:
        w.writerow([r.pattern, r.length, r.support, "true" if r.is_negative else "false"])
    return buf.getvalue()


def format_stats(report: MiningReport) -> str:
    lines = ["len  generated  checked  pruned  frequent"]
    for row in level_rows(report):
        lines.append(f"{row['len']:>3}  {row['generated']:>9}  {row['checked']:>7}  {row['pruned']:>6}  {row['frequent']:>8}")
    t = stats_block(report)["totals"]
    lines.append(f"  >=2 {t['generated']:>8}  {t['checked']:>7}  {t['pruned']:>6}  {t['frequent']:>8}")
    lines.append(f"time {report.timings.get('total', 0.0):.3f}s")
    return "\n".join(lines) + "\n"


STRATEGY_LABELS = {
    Strategy.ENUM_DFS: "Depth-first enumeration tree",
    Strategy.ENUM_BFS: "Breadth-first enumeration tree",
    Strategy.JOIN_ONLY: "Pattern join",
    Strategy.JOIN_PRUNE: "Pattern join and pruning",
}


def comparison_table(reports: dict) -> tuple:
    """Support-checked candidates per length (>= 2) per strategy, plus a frequent-pattern row.

    Returns ``(lengths, rows)`` with rows as ``(label, [counts...], total, seconds)``.
    """
    lengths = sorted({lvl for r in reports.values() for lvl in r.levels if lvl >= 2})
    rows = []
    for strategy in STRATEGY_LABELS:
        if strategy not in reports:
            continue
        r = reports[strategy]
        counts = [r.levels[l].checked if l in r.levels else 0 for l in lengths]
        rows.append((strategy.value, counts, sum(counts), r.timings.get("total", 0.0)))
    any_report = next(iter(reports.values()))
    freq = [len(any_report.frequent.get(l, ())) for l in lengths]
    rows.append(("frequent", freq, sum(freq), None))
    return lengths, rows


def comparison_csv(reports: dict, timings: bool = False) -> str:
    lengths, rows = comparison_table(reports)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["strategy"] + [f"length={l}" for l in lengths] + ["total"]
    if timings:
        header.append("seconds")
    w.writerow(header)
    for label, counts, total, secs in rows:
        row = [label, *counts, total]
        if timings:
            row.append("" if secs is None else f"{secs:.4f}")
        w.writerow(row)
    return buf.getvalue()


def comparison_json(reports: dict, timings: bool = False) -> str:
    lengths, rows = comparison_table(reports)
    doc = {"lengths": lengths, "rows": []}
    for label, counts, total, secs in rows:
        row = {"strategy": label, "checked": counts, "total": total}
        if timings and secs is not None:
            row["seconds"] = round(secs, 6)
        doc["rows"].append(row)
    return json.dumps(doc, indent=2) + "\n"


def plot_comparison(reports: dict, path: str) -> None:
    """Grouped bars of checked candidates per length, and total runtime per strategy."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    lengths, rows = comparison_table(reports)
    strat_rows = [r for r in rows if r[0] != "frequent"]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    x = np.arange(len(lengths))
    width = 0.8 / max(len(strat_rows), 1)
    for k, (label, counts, _, _) in enumerate(strat_rows):
        ax1.bar(x + k * width - 0.4 + width / 2, counts, width, label=label)
    ax1.set_xticks(x)
    ax1.set_xticklabels([str(l) for l in lengths])
    ax1.set_xlabel("pattern length")
    ax1.set_ylabel("candidates checked")
    ax1.set_yscale("log")
    ax1.legend(fontsize=8)
    labels = [r[0] for r in strat_rows]
    ax2.bar(labels, [r[3] for r in strat_rows], color="0.4")
    ax2.set_ylabel("seconds")
    ax2.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
