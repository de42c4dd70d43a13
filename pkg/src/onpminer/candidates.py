"""Candidate generation by pattern join, plus skeleton-based pruning."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import ConfigError, Pattern, positive_skeleton


@dataclass
class LevelStats:
    """Candidate accounting for one pattern length: generated = checked + pruned."""

    generated: int = 0
    checked: int = 0
    pruned: int = 0
    frequent: int = 0

    def as_dict(self) -> dict:
        return {"generated": self.generated, "checked": self.checked, "pruned": self.pruned, "frequent": self.frequent}


@dataclass
class CandidateSet:
    level: int
    positives: list = field(default_factory=list)
    negatives: list = field(default_factory=list)
    skeleton_index: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.positives) + len(self.negatives)

    def __iter__(self):
        yield from self.positives
        yield from self.negatives

    @classmethod
    def from_patterns(cls, level: int, patterns: Iterable[Pattern]) -> "CandidateSet":
        unique = sorted(set(patterns), key=Pattern.text)
        cs = cls(level)
        for p in unique:
            if len(p) != level:
                raise ConfigError(f"candidate {p} does not have length {level}")
            if p.is_negative:
                cs.negatives.append(p)
                cs.skeleton_index[p] = positive_skeleton(p)
            else:
                cs.positives.append(p)
        return cs


def prefix(p: Pattern) -> Pattern:
    """Drop the last positive symbol and the negative slot before it."""
    if len(p) < 2:
        raise ValueError("prefix needs a pattern of length >= 2")
    return Pattern(p.positives[:-1], p.negatives[:-1], p.gap)


def suffix(p: Pattern) -> Pattern:
    """Drop the first positive symbol and the negative slot after it."""
    if len(p) < 2:
        raise ValueError("suffix needs a pattern of length >= 2")
    return Pattern(p.positives[1:], p.negatives[1:], p.gap)


def join(p: Pattern, q: Pattern) -> Optional[Pattern]:
    """``p ⊕ q`` when suffix(p) equals prefix(q), else None."""
    if len(p) != len(q) or p.gap != q.gap:
        raise ValueError("join needs patterns of equal length and gap")
    if len(p) == 1:
        return Pattern(p.positives + q.positives, (None,), p.gap)
    if p.positives[1:] != q.positives[:-1] or p.negatives[1:] != q.negatives[:-1]:
        return None
    return Pattern(p.positives + q.positives[-1:], p.negatives + q.negatives[-1:], p.gap)


def negative_variants(p: Pattern, alphabet: Iterable[str]) -> list:
    """``a[M,N]¬e b`` for every ``e`` in the alphabet, from a positive 2-pattern ``a[M,N]b``."""
    return [Pattern(p.positives, (e,), p.gap) for e in sorted(alphabet)]


def generate_level2(F1, alphabet, db, minsup: int, prune: bool = True):
    """Frequent 2-patterns from the frequent length-1 patterns ``F1``.

    Every ordered pair of frequent symbols gives a positive candidate. Negative
    variants over the whole alphabet are generated for each positive pair; with
    ``prune`` only the variants of frequent pairs are support-checked.

    Returns ``(frequent, stats)`` where ``frequent`` is a list of ``(pattern, support)``
    sorted by text.
    """
    from .miner import find_frequent

    F1 = sorted(F1, key=Pattern.text)
    if not F1:
        return [], LevelStats()
    gap = F1[0].gap
    symbols = [p.positives[0] for p in F1]
    positives = [Pattern.positive((a, b), gap) for a in symbols for b in symbols]
    freq_pos = find_frequent(db, minsup, positives)
    frequent_skeletons = {p for p, _ in freq_pos}
    negatives = []
    pruned = 0
    for p in positives:
        variants = negative_variants(p, alphabet)
        if prune and p not in frequent_skeletons:
            pruned += len(variants)
            continue
        negatives.extend(variants)
    freq_neg = find_frequent(db, minsup, negatives)
    frequent = sorted(freq_pos + freq_neg, key=lambda ps: ps[0].text())
    stats = LevelStats(
        generated=len(positives) + len(negatives) + pruned,
        checked=len(positives) + len(negatives),
        pruned=pruned,
        frequent=len(frequent),
    )
    return frequent, stats


def pattern_join_all(F_len: Iterable[Pattern]) -> CandidateSet:
    """All joins ``p ⊕ q`` over ordered pairs (self-joins included), deduplicated."""
    patterns = sorted(set(F_len), key=Pattern.text)
    if not patterns:
        return CandidateSet(level=0)
    level = len(patterns[0])
    by_prefix = {}
    for q in patterns:
        if len(q) != level or q.gap != patterns[0].gap:
            raise ValueError("pattern_join_all needs patterns of one length and gap")
        by_prefix.setdefault((q.positives[:-1], q.negatives[:-1]), []).append(q)
    joined = []
    for p in patterns:
        for q in by_prefix.get((p.positives[1:], p.negatives[1:]), ()):
            joined.append(join(p, q))
    return CandidateSet.from_patterns(level + 1, joined)


def prune_by_skeleton(cands: CandidateSet, frequent_positive_skeletons) -> CandidateSet:
    """Drop negative candidates whose positive skeleton is not frequent."""
    keep = set(frequent_positive_skeletons)
    out = CandidateSet(cands.level, list(cands.positives))
    for q in cands.negatives:
        skel = cands.skeleton_index[q]
        if skel in keep:
            out.negatives.append(q)
            out.skeleton_index[q] = skel
    return out
