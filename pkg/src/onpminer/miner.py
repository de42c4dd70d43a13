"""Level-wise mining driver."""

from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable

from .candidates import LevelStats, generate_level2, pattern_join_all, prune_by_skeleton
from .core import MiningConfig, Pattern, SequenceDatabase, Strategy
from .matcher import support_total

log = logging.getLogger(__name__)


@dataclass
class MiningReport:
    config: MiningConfig
    frequent: dict = field(default_factory=dict)  # level -> [(Pattern, support)] sorted by text
    levels: dict = field(default_factory=dict)  # level -> LevelStats
    timings: dict = field(default_factory=dict)  # phase -> seconds

    def patterns(self) -> list:
        """All frequent ``(pattern, support)`` pairs, by length then text."""
        return [ps for level in sorted(self.frequent) for ps in self.frequent[level]]

    def pattern_set(self) -> dict:
        return {p.text(): sup for p, sup in self.patterns()}

    def __len__(self):
        return sum(len(v) for v in self.frequent.values())

    def candidate_total(self, min_level: int = 2) -> int:
        """Support-checked candidates summed over lengths >= ``min_level``."""
        return sum(st.checked for lvl, st in self.levels.items() if lvl >= min_level)

    def check(self):
        """Raise AssertionError if the report breaks its own invariants."""
        for level, items in self.frequent.items():
            texts = [p.text() for p, _ in items]
            assert texts == sorted(texts), f"level {level} not sorted"
            for p, sup in items:
                assert len(p) == level, f"{p} filed under level {level}"
                assert sup >= self.config.minsup, f"{p} below minsup"
            assert self.levels[level].frequent == len(items), f"level {level} count mismatch"
        for level, st in self.levels.items():
            assert st.generated == st.checked + st.pruned, f"level {level} accounting"


def frequent_length1(db: SequenceDatabase, minsup: int, alphabet, gap) -> list:
    """Symbols whose occurrence count over the database reaches ``minsup``."""
    counts = Counter()
    for seq in db.sequences:
        counts.update(seq.symbols)
    return [(Pattern.positive(a, gap), counts[a]) for a in sorted(alphabet) if counts[a] >= minsup]


_worker_db = None


def _init_worker(db):
    global _worker_db
    _worker_db = db


def _worker_support(p):
    return support_total(_worker_db, p)


def find_frequent(db: SequenceDatabase, minsup: int, cands: Iterable[Pattern], workers: int = 1) -> list:
    """``(pattern, support)`` for each candidate meeting ``minsup``, in candidate order."""
    cands = list(cands)
    if workers > 1 and len(cands) >= 4 * workers:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(db,)) as ex:
            sups = list(ex.map(_worker_support, cands, chunksize=max(1, len(cands) // (4 * workers))))
    else:
        sups = [support_total(db, p) for p in cands]
    return [(p, s) for p, s in zip(cands, sups) if s >= minsup]


def level_cap(db: SequenceDatabase, config: MiningConfig) -> int:
    longest = max((len(s) for s in db.sequences), default=0)
    return longest if config.max_length is None else min(config.max_length, longest)


def _bootstrap(db, config, report, sigma):
    t0 = time.perf_counter()
    F1 = frequent_length1(db, config.minsup, sigma, config.gap)
    report.frequent[1] = F1
    report.levels[1] = LevelStats(len(sigma), len(sigma), 0, len(F1))
    report.timings["level1"] = time.perf_counter() - t0
    return F1


def _mine_join(db: SequenceDatabase, config: MiningConfig, prune: bool) -> MiningReport:
    report = MiningReport(config)
    sigma = config.alphabet_for(db)
    cap = level_cap(db, config)
    workers = config.parallelism
    F1 = _bootstrap(db, config, report, sigma)
    if cap < 2 or not F1:
        return report

    t0 = time.perf_counter()
    F, stats = generate_level2([p for p, _ in F1], sigma, db, config.minsup, prune=prune)
    report.levels[2] = stats
    if F:
        report.frequent[2] = F
    report.timings["level2"] = time.perf_counter() - t0
    log.info("length 2: %d checked, %d frequent", stats.checked, len(F))

    level = 2
    while F and level < cap:
        t0 = time.perf_counter()
        cands = pattern_join_all(p for p, _ in F)
        generated = len(cands)
        freq_pos = find_frequent(db, config.minsup, cands.positives, workers)
        if prune:
            cands = prune_by_skeleton(cands, [p for p, _ in freq_pos])
        freq_neg = find_frequent(db, config.minsup, cands.negatives, workers)
        level += 1
        F = sorted(freq_pos + freq_neg, key=lambda ps: ps[0].text())
        report.levels[level] = LevelStats(generated, len(cands), generated - len(cands), len(F))
        if F:
            report.frequent[level] = F
        report.timings[f"level{level}"] = time.perf_counter() - t0
        log.info("length %d: %d generated, %d checked, %d frequent", level, generated, len(cands), len(F))
    return report


def mine(db: SequenceDatabase, config: MiningConfig) -> MiningReport:
    """Mine every frequent one-off negative pattern under ``config``.

    The strategy only changes how candidates are produced; the frequent patterns and
    their supports are meant to be identical across strategies.
    """
    if not len(db):
        raise ValueError("cannot mine an empty database")
    t0 = time.perf_counter()
    if config.strategy is Strategy.JOIN_PRUNE:
        report = _mine_join(db, config, prune=True)
    elif config.strategy is Strategy.JOIN_ONLY:
        report = _mine_join(db, config, prune=False)
    else:
        from .baselines import mine_enum

        report = mine_enum(db, config, "bfs" if config.strategy is Strategy.ENUM_BFS else "dfs")
    report.timings["total"] = time.perf_counter() - t0
    return report


def mine_all_strategies(db: SequenceDatabase, config: MiningConfig) -> dict:
    return {s: mine(db, replace(config, strategy=s)) for s in Strategy}
