"""Mining one-off negative sequential patterns under gap constraints."""

from .core import (
    ConfigError,
    GapConstraint,
    InputError,
    MiningConfig,
    ONPError,
    Pattern,
    PatternSyntaxError,
    Sequence,
    SequenceDatabase,
    Strategy,
    is_valid_occurrence,
    parse_pattern,
    positive_skeleton,
)
from .matcher import (
    MatchState,
    SupportResult,
    count_support,
    count_support_db,
    dfb,
    enumerate_all_occurrences,
    max_disjoint_count,
    negative_gap_ok,
)
from .candidates import CandidateSet, LevelStats, join, pattern_join_all, prefix, prune_by_skeleton, suffix
from .miner import MiningReport, find_frequent, frequent_length1, mine
from .baselines import enum_extensions, mine_enum, mine_join_only

__version__ = "0.1.0"
