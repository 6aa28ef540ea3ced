"""Data augmentation by same-label substructure substitution.

Generate new labeled examples for POS tagging, dependency parsing,
constituency parsing, and text classification by swapping a substructure
of one example with a same-key substructure from another, plus random
baselines and a balanced-skeleton variant for plain text.

Typical library use:

    from subaug import AugmentConfig, augment, read_dataset

    data = read_dataset(open("train.conllu").read(), task="dep", fmt="conllu")
    out = augment(data, AugmentConfig(task="dep", multiplier=20, replicate=20, seed=7))
"""

from .baselines import balanced_sub2, build_vocab, generate_random, rand_shuffle, rand_word
from .data import (
    Dataset,
    DepSentence,
    Internal,
    Leaf,
    Provenance,
    TaggedSentence,
    TextExample,
    Token,
    make_tokens,
    tree_yield,
)
from .engine import AugmentConfig, augment, reachable_one_step
from .errors import (
    AugmentError,
    ConfigError,
    DataValidationError,
    FormatError,
    SubaugError,
)
from .formats import FORMATS, FORMATS_BY_TASK, read_dataset, write_dataset
from .index import ConstraintSet, Locus, SubstructureIndex, balanced_parse, index_for
from .validate import StatsReport, Violation, check_example, stats, validate_dataset

__version__ = "0.1.0"

__all__ = [
    "AugmentConfig",
    "AugmentError",
    "ConfigError",
    "ConstraintSet",
    "DataValidationError",
    "Dataset",
    "DepSentence",
    "FORMATS",
    "FORMATS_BY_TASK",
    "FormatError",
    "Internal",
    "Leaf",
    "Locus",
    "Provenance",
    "StatsReport",
    "SubaugError",
    "SubstructureIndex",
    "TaggedSentence",
    "TextExample",
    "Token",
    "Violation",
    "augment",
    "balanced_parse",
    "balanced_sub2",
    "build_vocab",
    "check_example",
    "generate_random",
    "index_for",
    "make_tokens",
    "rand_shuffle",
    "rand_word",
    "reachable_one_step",
    "read_dataset",
    "stats",
    "tree_yield",
    "validate_dataset",
    "write_dataset",
]
