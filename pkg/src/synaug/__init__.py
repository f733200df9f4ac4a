"""Depth-guided word noising for parallel MT corpora.

Words are selected for modification with probability increasing in
their dependency-parse-tree depth, so syntactically central words are
rarely disturbed, and the selected words are blanked, dropped or
replaced by frequency-matched neighbours.
"""

from synaug.conllu import (
    ConlluFormatError,
    ParsedSentence,
    Token,
    TreeError,
    compute_depths,
    iter_parse_results,
    parse_conllu,
)
from synaug.frequency import (
    FrequencyTable,
    OOVError,
    ReplacementPolicy,
    build_frequency_table,
    replacement_candidates,
    sample_replacement,
)
from synaug.operations import (
    BLANK_TOKEN,
    OPERATIONS,
    AugmentationRecord,
    apply_blanking,
    apply_dropout,
    apply_replacement,
)
from synaug.pipeline import (
    AlignmentError,
    JoinError,
    ParallelUnit,
    PipelineConfig,
    PlaceholderCollisionError,
    RunStats,
    augment_unit,
    join_corpus,
    run_pipeline,
)
from synaug.selection import (
    POLICY_KINDS,
    SelectionPolicy,
    SelectionProfile,
    build_profile,
    depth_score,
    derive_rng,
    length_scale,
    normalize,
    sample_mask,
    uniform_mask,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "AugmentationRecord",
    "BLANK_TOKEN",
    "ConlluFormatError",
    "FrequencyTable",
    "JoinError",
    "OOVError",
    "OPERATIONS",
    "POLICY_KINDS",
    "ParallelUnit",
    "ParsedSentence",
    "PipelineConfig",
    "PlaceholderCollisionError",
    "ReplacementPolicy",
    "RunStats",
    "SelectionPolicy",
    "SelectionProfile",
    "Token",
    "TreeError",
    "apply_blanking",
    "apply_dropout",
    "apply_replacement",
    "augment_unit",
    "build_frequency_table",
    "build_profile",
    "compute_depths",
    "depth_score",
    "derive_rng",
    "iter_parse_results",
    "join_corpus",
    "length_scale",
    "normalize",
    "parse_conllu",
    "replacement_candidates",
    "run_pipeline",
    "sample_mask",
    "sample_replacement",
    "uniform_mask",
    "__version__",
]
