"""Partially ordered scripts: DAG construction, DOT codec, aggregation, metrics."""

from scriptdag._core import (
    LEAF_ID,
    ROOT_ID,
    UNSPECIFIED_SCENARIO,
    Corpus,
    CorpusRecord,
    CorpusStats,
    CycleError,
    EditOp,
    EditScript,
    EvalReport,
    Event,
    FilterResult,
    GedOpCounts,
    GedResult,
    InvalidRecord,
    LoadWarning,
    ParseError,
    ParseWarning,
    PrfScore,
    ScoredPair,
    ScriptGraph,
    ScriptScore,
    SizeLimitError,
    ValidationReport,
    Violation,
    agreement_f1,
    agreement_filter,
    corpus_report,
    corpus_stats,
    edge_prf,
    emit_dot,
    ged,
    ged_approx,
    is_acyclic,
    load_jsonl,
    normalize_label,
    parse_dot,
    parse_lenient,
    predict_edges,
    random_baseline_eval,
    random_script,
    save_jsonl,
    topological_order,
    transitive_closure,
    transitive_reduction,
)

__all__ = [
    "LEAF_ID",
    "ROOT_ID",
    "UNSPECIFIED_SCENARIO",
    "Corpus",
    "CorpusRecord",
    "CorpusStats",
    "CycleError",
    "EditOp",
    "EditScript",
    "EvalReport",
    "Event",
    "FilterResult",
    "GedOpCounts",
    "GedResult",
    "InvalidRecord",
    "LoadWarning",
    "ParseError",
    "ParseWarning",
    "PrfScore",
    "ScoredPair",
    "ScriptGraph",
    "ScriptScore",
    "SizeLimitError",
    "ValidationReport",
    "Violation",
    "agreement_f1",
    "agreement_filter",
    "corpus_report",
    "corpus_stats",
    "edge_prf",
    "emit_dot",
    "ged",
    "ged_approx",
    "is_acyclic",
    "load_jsonl",
    "normalize_label",
    "parse_dot",
    "parse_lenient",
    "predict_edges",
    "random_baseline_eval",
    "random_script",
    "save_jsonl",
    "topological_order",
    "transitive_closure",
    "transitive_reduction",
]

__version__ = "0.1.0"
