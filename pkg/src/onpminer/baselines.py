"""Comparison strategies: enumeration-tree generation (breadth- and depth-first) and join without pruning."""

from __future__ import annotations

import time
from dataclasses import replace

from .candidates import LevelStats
from .core import MiningConfig, Pattern, SequenceDatabase, Strategy
from .matcher import support_total
from .miner import MiningReport, _bootstrap, find_frequent, level_cap, mine


def enum_extensions(p: Pattern, alphabet) -> list:
    """``p[M,N]x`` for every symbol ``x``, then ``p[M,N]¬e x`` for every pair ``(e, x)``."""
    sigma = sorted(alphabet)
    out = [Pattern(p.positives + (x,), p.negatives + (None,), p.gap) for x in sigma]
    out += [Pattern(p.positives + (x,), p.negatives + (e,), p.gap) for x in sigma for e in sigma]
    return out


def _split(cands):
    pos = [c for c in cands if not c.is_negative]
    neg = [c for c in cands if c.is_negative]
    return pos, neg


def _mine_bfs(db, config, report, sigma, cap):
    base = [Pattern.positive(a, config.gap) for a in sigma]
    level = 1
    while base and level < cap:
        t0 = time.perf_counter()
        cands = [c for p in base for c in enum_extensions(p, sigma)]
        pos, neg = _split(cands)
        F = find_frequent(db, config.minsup, pos, config.parallelism)
        F += find_frequent(db, config.minsup, neg, config.parallelism)
        level += 1
        F.sort(key=lambda ps: ps[0].text())
        report.levels[level] = LevelStats(len(cands), len(cands), 0, len(F))
        if F:
            report.frequent[level] = F
        report.timings[f"level{level}"] = time.perf_counter() - t0
        base = [p for p, _ in F]


def _mine_dfs(db, config, report, sigma, cap):
    minsup = config.minsup

    def visit(p):
        if len(p) >= cap:
            return
        level = len(p) + 1
        st = report.levels.setdefault(level, LevelStats())
        pos, neg = _split(enum_extensions(p, sigma))
        found = []
        for c in pos + neg:
            st.generated += 1
            st.checked += 1
            sup = support_total(db, c)
            if sup >= minsup:
                found.append((c, sup))
        st.frequent += len(found)
        report.frequent.setdefault(level, []).extend(found)
        for c, _ in found:
            visit(c)

    t0 = time.perf_counter()
    for a in sigma:
        visit(Pattern.positive(a, config.gap))
    for level in list(report.frequent):
        if not report.frequent[level]:
            del report.frequent[level]
        else:
            report.frequent[level].sort(key=lambda ps: ps[0].text())
    report.timings["search"] = time.perf_counter() - t0


def mine_enum(db: SequenceDatabase, config: MiningConfig, order: str = "bfs") -> MiningReport:
    """Enumeration-tree baseline.

    Every alphabet symbol seeds the tree regardless of its own support; below that only
    frequent patterns are extended. ``order`` is ``"bfs"`` or ``"dfs"``; both give the
    same counts and patterns.
    """
    if order not in ("bfs", "dfs"):
        raise ValueError(f"order must be 'bfs' or 'dfs', not {order!r}")
    strategy = Strategy.ENUM_BFS if order == "bfs" else Strategy.ENUM_DFS
    report = MiningReport(replace(config, strategy=strategy))
    sigma = config.alphabet_for(db)
    cap = level_cap(db, config)
    _bootstrap(db, config, report, sigma)
    if order == "bfs":
        _mine_bfs(db, config, report, sigma, cap)
    else:
        _mine_dfs(db, config, report, sigma, cap)
    return report


def mine_join_only(db: SequenceDatabase, config: MiningConfig) -> MiningReport:
    """Pattern join without skeleton pruning."""
    return mine(db, replace(config, strategy=Strategy.JOIN_ONLY))
