"""One-off support counting.

``count_support`` is the greedy depth-first/backtracking matcher that defines support
throughout the package. ``enumerate_all_occurrences`` and ``max_disjoint_count`` are
exhaustive oracles for tests and are only meant for small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import ONPError, Pattern, Sequence, SequenceDatabase

Observer = Callable[..., None]

ORACLE_LIMIT = 200_000


class OracleLimitError(ONPError):
    """The instance is too large for exhaustive enumeration."""


@dataclass
class MatchState:
    """Per-sequence bookkeeping for one pattern.

    Node keys are packed as ``level * width + position`` (``width = n + 2``) so the
    inner loop avoids tuple allocation; ``created_nodes()`` and ``dead_nodes()`` decode
    them to ``(level, position)`` pairs, both 1-based.
    """

    width: int = 0
    used: set = field(default_factory=set)
    created: set = field(default_factory=set)
    dead: set = field(default_factory=set)
    cursor: dict = field(default_factory=dict)

    def key(self, level: int, position: int) -> int:
        return level * self.width + position

    def _decode(self, keys) -> set:
        return {divmod(k, self.width) for k in keys}

    def created_nodes(self) -> set:
        return self._decode(self.created)

    def dead_nodes(self) -> set:
        return self._decode(self.dead)


@dataclass
class SupportResult:
    pattern: Pattern
    total: int
    per_sequence: list  # (sequence id, count, [occurrence tuples])


def _text(s) -> str:
    return s.symbols if isinstance(s, Sequence) else s


def negative_gap_ok(s, left: int, right: int, e: Optional[str]) -> bool:
    """True when the negative element ``e`` is satisfied strictly between ``left`` and ``right``.

    ``None`` always passes. Otherwise the interior must be non-empty (the negative
    element occupies at least one position) and must not contain ``e``.
    """
    if e is None:
        return True
    if right - left <= 1:
        return False
    return e not in _text(s)[left : right - 1]


def dfb(s, p: Pattern, root: int, state: MatchState, observer: Optional[Observer] = None):
    """Depth-first extension of the root node at ``root``.

    Returns the first complete occurrence as a tuple of positions, or ``None`` once the
    root's subtree is exhausted. Children are tried leftmost first; a ``(level, position)``
    node already created under any parent in this sequence is never attached again.
    """
    text = _text(s)
    if not state.width:
        state.width = len(text) + 2
    return _extend(text, p.positives, p.negatives, p.gap.min_gap + 1, p.gap.max_gap + 1, root, state, observer)


def _extend(text, positives, negatives, lo, hi, root, state, observer):
    n = len(text)
    m = len(positives)
    width = state.width
    used, created, cursor = state.used, state.created, state.cursor
    occ = [root]
    while 0 < len(occ) < m:
        level = len(occ)
        t = occ[-1]
        key = level * width + t
        want = positives[level]
        e = negatives[level - 1]
        base = (level + 1) * width
        stop = t + hi if t + hi < n else n
        child = 0
        for i in range(cursor.get(key, t + lo), stop + 1):
            if text[i - 1] != want or i in used:
                continue
            if base + i in created:
                if observer is not None:
                    observer("blocked", level + 1, i)
                continue
            if e is not None and (i - t == 1 or e in text[t : i - 1]):
                if observer is not None:
                    observer("negative", level + 1, i)
                continue
            child = i
            break
        if child:
            cursor[key] = child + 1
            created.add(base + child)
            if observer is not None:
                observer("create", level + 1, child)
            occ.append(child)
        else:
            cursor[key] = stop + 1
            state.dead.add(key)
            if observer is not None:
                observer("dead", level, t)
            occ.pop()
    return tuple(occ) if occ else None


def count_support(s, p: Pattern, observer: Optional[Observer] = None, state: Optional[MatchState] = None):
    """Greedy one-off support of ``p`` in one sequence.

    Returns ``(count, occurrences)`` with occurrences in discovery order. Pass a
    ``MatchState`` to inspect the search afterwards, and an ``observer`` callable to
    receive ``(event, level, position)`` calls for ``root``, ``create``, ``blocked``,
    ``negative`` and ``dead`` plus ``("occurrence", positions)``.
    """
    text = _text(s)
    n = len(text)
    m = len(p.positives)
    if state is None:
        state = MatchState()
    state.width = n + 2
    if n < m:
        return 0, []
    positives, negatives = p.positives, p.negatives
    lo, hi = p.gap.min_gap + 1, p.gap.max_gap + 1
    first = positives[0]
    occurrences = []
    used, created = state.used, state.created
    width = state.width
    find = text.find
    # roots past this point cannot fit m - 1 more gaps; they come last, so skipping them
    # never changes what earlier roots see
    end = n - (m - 1) * lo + 1
    i = find(first, 0, end) + 1
    while i > 0:
        if i not in used and width + i not in created:
            created.add(width + i)
            if observer is not None:
                observer("root", 1, i)
            occ = _extend(text, positives, negatives, lo, hi, i, state, observer) if m > 1 else (i,)
            if occ is not None:
                occurrences.append(occ)
                used.update(occ)
                if observer is not None:
                    observer("occurrence", occ)
        i = find(first, i, end) + 1
    return len(occurrences), occurrences


def support_total(db: SequenceDatabase, p: Pattern) -> int:
    """Database support without keeping occurrences."""
    return sum(count_support(seq, p)[0] for seq in db.sequences)


def count_support_db(db: SequenceDatabase, p: Pattern) -> SupportResult:
    per_sequence = []
    total = 0
    for k, seq in enumerate(db.sequences):
        count, occs = count_support(seq, p)
        per_sequence.append((db.sequence_id(k), count, occs))
        total += count
    return SupportResult(p, total, per_sequence)


def enumerate_all_occurrences(s, p: Pattern, limit: int = ORACLE_LIMIT) -> list:
    """Every valid occurrence of ``p`` in ``s``, lexicographically, ignoring the one-off condition.

    Raises OracleLimitError past ``limit`` occurrences.
    """
    text = _text(s)
    n = len(text)
    m = len(p)
    lo, hi = p.gap.min_gap + 1, p.gap.max_gap + 1
    out = []

    def extend(prefix):
        if len(prefix) == m:
            out.append(tuple(prefix))
            if len(out) > limit:
                raise OracleLimitError(f"more than {limit} occurrences")
            return
        j = len(prefix)
        t = prefix[-1]
        for i in range(t + lo, min(t + hi, n) + 1):
            if text[i - 1] == p.positives[j] and negative_gap_ok(text, t, i, p.negatives[j - 1]):
                prefix.append(i)
                extend(prefix)
                prefix.pop()

    for start in range(1, n + 1):
        if text[start - 1] == p.positives[0]:
            extend([start])
    return out


def max_disjoint_count(s, p: Pattern, limit: int = ORACLE_LIMIT) -> int:
    """Exact maximum number of pairwise position-disjoint occurrences.

    Exhaustive search over ``enumerate_all_occurrences``: positions are decided left to
    right, and at each position at most one occurrence starting there is taken. Only
    the used positions at or right of the current one affect the future, which gives the
    memo key.
    """
    occs = enumerate_all_occurrences(s, p, limit)
    if not occs:
        return 0
    by_start = {}
    for o in occs:
        by_start.setdefault(o[0], []).append(sum(1 << q for q in o))
    starts = sorted(by_start)
    memo = {}

    def best(k: int, used: int) -> int:
        if k == len(starts):
            return 0
        x = starts[k]
        used &= ~((1 << x) - 1)
        key = (k, used)
        if key in memo:
            return memo[key]
        result = best(k + 1, used)
        for mask in by_start[x]:
            if not mask & used:
                result = max(result, 1 + best(k + 1, used | mask))
        memo[key] = result
        return result

    return best(0, 0)
