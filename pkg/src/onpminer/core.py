"""Domain types: sequences, gap-constrained negative patterns, occurrences and run configuration.

Positions are 1-based everywhere, so ``<1,3,5>`` means the first, third and fifth
symbols of a sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence as Seq

NEG = "¬"  # ¬
ASCII_NEG = "!"
RESERVED = frozenset("[],¬!") | frozenset(" \t\r\n")


class ONPError(Exception):
    """Base class for all errors raised by this package."""


class PatternSyntaxError(ONPError, ValueError):
    pass


class ConfigError(ONPError, ValueError):
    pass


class InputError(ONPError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class GapConstraint:
    """Minimum and maximum number of wildcard positions between consecutive pattern symbols."""

    min_gap: int
    max_gap: int

    def __post_init__(self):
        if not (isinstance(self.min_gap, int) and isinstance(self.max_gap, int)):
            raise ConfigError("gap bounds must be integers")
        if self.min_gap < 0 or self.min_gap > self.max_gap:
            raise ConfigError(f"invalid gap [{self.min_gap},{self.max_gap}]: need 0 <= M <= N")

    @classmethod
    def parse(cls, text: str) -> "GapConstraint":
        """Parse ``"M,N"`` (brackets optional)."""
        body = text.strip().strip("[]")
        parts = body.split(",")
        if len(parts) != 2:
            raise ConfigError(f"gap must look like M,N: {text!r}")
        try:
            lo, hi = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(f"gap must look like M,N: {text!r}") from None
        return cls(lo, hi)

    def __str__(self):
        return f"[{self.min_gap},{self.max_gap}]"


@dataclass(frozen=True)
class Sequence:
    symbols: str
    id: Optional[str] = None

    def __post_init__(self):
        if not self.symbols:
            raise InputError("a sequence must contain at least one symbol")

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, position: int) -> str:
        # 1-based
        if position < 1:
            raise IndexError(position)
        return self.symbols[position - 1]


@dataclass(frozen=True)
class SequenceDatabase:
    sequences: tuple
    alphabet: frozenset

    def __init__(self, sequences: Iterable, alphabet: Optional[Iterable[str]] = None):
        seqs = tuple(s if isinstance(s, Sequence) else Sequence(s) for s in sequences)
        observed = frozenset(ch for s in seqs for ch in s.symbols)
        if alphabet is None:
            sigma = observed
        else:
            sigma = frozenset(alphabet)
            missing = observed - sigma
            if missing:
                raise InputError(
                    "alphabet override must cover every observed symbol; missing "
                    + "".join(sorted(missing))
                )
        bad = sigma & RESERVED
        if bad:
            raise InputError(f"reserved characters cannot be symbols: {''.join(sorted(bad))!r}")
        if any(len(a) != 1 for a in sigma):
            raise InputError("symbols must be single characters")
        object.__setattr__(self, "sequences", seqs)
        object.__setattr__(self, "alphabet", sigma)

    def __len__(self):
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.sequences)

    def sequence_id(self, k: int) -> str:
        """Identifier of the k-th (0-based) sequence; unnamed sequences get their 1-based index."""
        sid = self.sequences[k].id
        return sid if sid is not None else str(k + 1)


@dataclass(frozen=True)
class Pattern:
    """Positive symbols with an optional negative symbol between each adjacent pair.

    ``negatives[j]`` sits between ``positives[j]`` and ``positives[j + 1]``;
    ``None`` means no negative element there.
    """

    positives: tuple
    negatives: tuple
    gap: GapConstraint

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "negatives", tuple(self.negatives))
        if not self.positives:
            raise PatternSyntaxError("a pattern needs at least one positive symbol")
        if len(self.negatives) != len(self.positives) - 1:
            raise PatternSyntaxError("need exactly one negative slot between adjacent positives")

    @classmethod
    def positive(cls, symbols: Iterable[str], gap: GapConstraint) -> "Pattern":
        pos = tuple(symbols)
        return cls(pos, (None,) * (len(pos) - 1), gap)

    def __len__(self):
        return len(self.positives)

    @property
    def is_negative(self) -> bool:
        return any(e is not None for e in self.negatives)

    def text(self, ascii: bool = False) -> str:
        neg = ASCII_NEG if ascii else NEG
        out = [self.positives[0]]
        for e, sym in zip(self.negatives, self.positives[1:]):
            out.append(str(self.gap))
            if e is not None:
                out.append(neg + e)
            out.append(sym)
        return "".join(out)

    def __str__(self):
        return self.text()

    def symbols(self) -> set:
        return set(self.positives) | {e for e in self.negatives if e is not None}


def parse_pattern(text: str, gap: GapConstraint, alphabet: Optional[Iterable[str]] = None) -> Pattern:
    """Parse the canonical text form, e.g. ``A[0,2]¬GC[0,2]A``.

    ``!`` is accepted in place of ``¬``. Every embedded ``[M,N]`` must equal ``gap``.
    """
    pos = 0
    n = len(text)

    def symbol() -> str:
        nonlocal pos
        if pos >= n:
            raise PatternSyntaxError(f"unexpected end of pattern {text!r}")
        ch = text[pos]
        if ch in RESERVED:
            raise PatternSyntaxError(f"expected a symbol at offset {pos} in {text!r}, got {ch!r}")
        pos += 1
        return ch

    positives = [symbol()]
    negatives = []
    while pos < n:
        if text[pos] != "[":
            raise PatternSyntaxError(f"expected '[' at offset {pos} in {text!r}")
        close = text.find("]", pos)
        if close < 0:
            raise PatternSyntaxError(f"unterminated gap in {text!r}")
        try:
            embedded = GapConstraint.parse(text[pos : close + 1])
        except ConfigError as exc:
            raise PatternSyntaxError(str(exc)) from None
        if embedded != gap:
            raise PatternSyntaxError(f"embedded gap {embedded} differs from run gap {gap}")
        pos = close + 1
        if pos < n and text[pos] in (NEG, ASCII_NEG):
            pos += 1
            negatives.append(symbol())
        else:
            negatives.append(None)
        positives.append(symbol())

    pattern = Pattern(tuple(positives), tuple(negatives), gap)
    if alphabet is not None:
        unknown = pattern.symbols() - set(alphabet)
        if unknown:
            raise PatternSyntaxError(f"symbols outside the alphabet: {''.join(sorted(unknown))}")
    return pattern


def positive_skeleton(p: Pattern) -> Pattern:
    """Drop every negative element."""
    if not p.is_negative:
        return p
    return Pattern(p.positives, (None,) * len(p.negatives), p.gap)


def is_valid_occurrence(s: Sequence | str, p: Pattern, positions: Seq[int]) -> bool:
    """Check a position tuple against symbol equality, gap bounds and negative elements.

    A negative element stands for one missing symbol, so it needs at least one
    position between its flanking matches, none of which may hold the excluded symbol.
    """
    text = s.symbols if isinstance(s, Sequence) else s
    if len(positions) != len(p):
        return False
    for j, pos in enumerate(positions):
        if not 1 <= pos <= len(text) or text[pos - 1] != p.positives[j]:
            return False
    for j in range(len(p) - 1):
        left, right = positions[j], positions[j + 1]
        interior = right - left - 1
        if not p.gap.min_gap <= interior <= p.gap.max_gap:
            return False
        e = p.negatives[j]
        if e is not None and (interior == 0 or e in text[left : right - 1]):
            return False
    return True


class Strategy(enum.Enum):
    JOIN_PRUNE = "join-prune"
    JOIN_ONLY = "join-only"
    ENUM_BFS = "enum-bfs"
    ENUM_DFS = "enum-dfs"


@dataclass(frozen=True)
class MiningConfig:
    minsup: int
    gap: GapConstraint
    strategy: Strategy = Strategy.JOIN_PRUNE
    alphabet_override: Optional[frozenset] = None
    parallelism: int = 1
    max_length: Optional[int] = None  # safety cap; defaults to the longest sequence

    def __post_init__(self):
        if not isinstance(self.minsup, int) or self.minsup < 1:
            raise ConfigError(f"minsup must be a positive integer, got {self.minsup!r}")
        if not isinstance(self.gap, GapConstraint):
            raise ConfigError("gap must be a GapConstraint")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")
        if self.max_length is not None and self.max_length < 1:
            raise ConfigError("max_length must be >= 1")
        if self.alphabet_override is not None:
            object.__setattr__(self, "alphabet_override", frozenset(self.alphabet_override))
        if isinstance(self.strategy, str):
            object.__setattr__(self, "strategy", Strategy(self.strategy))

    def alphabet_for(self, db: SequenceDatabase) -> list:
        """Sorted alphabet used for candidate generation."""
        if self.alphabet_override is None:
            return sorted(db.alphabet)
        missing = db.alphabet - self.alphabet_override
        if missing:
            raise ConfigError(
                "alphabet override must be a superset of the data alphabet; missing "
                + "".join(sorted(missing))
            )
        return sorted(self.alphabet_override)

    def as_dict(self) -> dict:
        return {
            "minsup": self.minsup,
            "gap": [self.gap.min_gap, self.gap.max_gap],
            "strategy": self.strategy.value,
            "alphabet": None if self.alphabet_override is None else "".join(sorted(self.alphabet_override)),
            "max_length": self.max_length,
        }
