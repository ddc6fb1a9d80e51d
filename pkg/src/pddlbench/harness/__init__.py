"""Evaluation harness: pipelines over task instances, metrics, triage."""

from .extract import extract_pddl, extract_plan
from .metrics import (
    BLOCK_BUCKETS,
    MetricsSummary,
    bucket_by_blocks,
    format_summary,
    pivot,
    summarize,
    to_csv,
    to_table,
)
from .pipelines import (
    ERROR_CLASSES,
    ERROR_DF_SEMANTIC,
    ERROR_PF_SEMANTIC,
    ERROR_SYNTAX,
    ERROR_UNCLASSIFIED,
    PIPELINES,
    PromptCatalog,
    RunRecord,
    read_records,
    run_batch,
    run_formalizer,
    run_planner,
    write_records,
)
from .triage import (
    CATEGORIES,
    MISSING_ACTION,
    MISSING_PARAMETERS,
    MISSING_PREDICATE,
    WRONG_EFFECT,
    WRONG_PRECONDITION,
    Suggestion,
    TriageReport,
    triage_errors,
)

__all__ = [
    "BLOCK_BUCKETS",
    "CATEGORIES",
    "MISSING_ACTION",
    "MISSING_PARAMETERS",
    "MISSING_PREDICATE",
    "WRONG_EFFECT",
    "WRONG_PRECONDITION",
    "ERROR_CLASSES",
    "ERROR_DF_SEMANTIC",
    "ERROR_PF_SEMANTIC",
    "ERROR_SYNTAX",
    "ERROR_UNCLASSIFIED",
    "MetricsSummary",
    "PIPELINES",
    "PromptCatalog",
    "RunRecord",
    "Suggestion",
    "TriageReport",
    "bucket_by_blocks",
    "extract_pddl",
    "extract_plan",
    "format_summary",
    "pivot",
    "read_records",
    "run_batch",
    "run_formalizer",
    "run_planner",
    "summarize",
    "to_csv",
    "to_table",
    "triage_errors",
    "write_records",
]
