"""Distinct abelian-square factor counting, extremal search, and conjecture checks."""

from .counting import (
    CountResult,
    count_distinct_fast,
    count_distinct_oracle,
    coverage_from_string,
    coverage_mask,
    coverage_to_string,
    fast_stats,
    last_symbol_covered,
)
from .harness import (
    CLAIM_IDS,
    ConjectureReport,
    LemmaCheckResult,
    ProofStepCounterexample,
    binary_image_exists,
    check_lemma1,
    falsify_proof_steps,
    verify_conjecture,
)
from .search import (
    CheckpointError,
    MaxSearchResult,
    SearchTask,
    checkpoint_append,
    checkpoint_resume,
    checkpoint_write,
    max_distinct,
    merge,
    partition_space,
    run_task,
)
from .words import (
    FactorRef,
    Word,
    canonical_form,
    enumerate_canonical,
    is_abelian_square,
    parikh,
    prefix_table,
)

__all__ = [
    "CLAIM_IDS",
    "CheckpointError",
    "ConjectureReport",
    "CountResult",
    "FactorRef",
    "LemmaCheckResult",
    "MaxSearchResult",
    "ProofStepCounterexample",
    "SearchTask",
    "Word",
    "binary_image_exists",
    "canonical_form",
    "check_lemma1",
    "checkpoint_append",
    "checkpoint_resume",
    "checkpoint_write",
    "count_distinct_fast",
    "count_distinct_oracle",
    "coverage_from_string",
    "coverage_mask",
    "coverage_to_string",
    "enumerate_canonical",
    "falsify_proof_steps",
    "fast_stats",
    "is_abelian_square",
    "last_symbol_covered",
    "max_distinct",
    "merge",
    "parikh",
    "partition_space",
    "prefix_table",
    "run_task",
    "verify_conjecture",
]

__version__ = "0.1.0"
