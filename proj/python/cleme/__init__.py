"""Chunk-level multi-reference evaluation for grammatical error correction."""

import json

from ._cleme import (
    AnnotatedSample,
    CLEMEError,
    Edit,
    apply_edits,
    boundary_stats,
    chunk_tables,
    emit_m2,
    extract_edits,
    f_beta,
    length_weight,
    parse_m2,
    partition,
    pearson,
    spearman,
    tokenize,
)
from ._cleme import evaluate_json as _evaluate_json

__all__ = [
    "AnnotatedSample",
    "CLEMEError",
    "Edit",
    "apply_edits",
    "boundary_stats",
    "chunk_tables",
    "emit_m2",
    "evaluate",
    "extract_edits",
    "f_beta",
    "length_weight",
    "parse_m2",
    "partition",
    "pearson",
    "spearman",
    "tokenize",
]


def evaluate(ref_m2, hyp_lines, variants=(), fn_on_mismatch="fp-only", ell=None,
             beta=None, drop_unchanged_refs=False, system="system"):
    """Score hypothesis lines against an M2 reference text; returns report rows."""
    report = _evaluate_json(ref_m2, list(hyp_lines), list(variants), fn_on_mismatch,
                            ell, beta, drop_unchanged_refs, system)
    return json.loads(report)["rows"]
