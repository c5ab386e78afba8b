"""Minimal-world query answering over ELH-bot / TELH-bot knowledge bases."""

from _mwq import (  # noqa: F401
    KnowledgeBase,
    MwqError,
    answer,
    bit_compare,
    check,
    classify,
    emit_comparator_formula,
    fuzz_trial,
    load_kb,
    representatives,
    rewrite,
    saturate,
)

__all__ = [
    "KnowledgeBase",
    "MwqError",
    "answer",
    "bit_compare",
    "check",
    "classify",
    "emit_comparator_formula",
    "fuzz_trial",
    "load_kb",
    "representatives",
    "rewrite",
    "saturate",
]
