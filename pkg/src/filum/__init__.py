"""Filum: exact, cutoff-bounded approximate phrase search for line-addressed corpora."""

from filum.align import (
    EditOp,
    EditScript,
    align_with_script,
    bounded_edit_distance,
    edit_distance,
)
from filum.corpus import (
    Corpus,
    IngestError,
    IntegrityError,
    StoreError,
    Work,
    context_lines,
    ingest_work,
    list_corpora,
    load_corpus,
    parse_work_document,
    save_corpus,
)
from filum.normalize import NormalizerConfig, Token, normalize_word, tokenize_line
from filum.search import (
    Match,
    Query,
    SearchMode,
    UnknownWorkError,
    WordAlignment,
    count_matches,
    length_prefilter,
    normalize_query,
    search,
    search_fixed,
    search_order_free,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "EditOp",
    "EditScript",
    "IngestError",
    "IntegrityError",
    "Match",
    "NormalizerConfig",
    "Query",
    "SearchMode",
    "StoreError",
    "Token",
    "UnknownWorkError",
    "Work",
    "WordAlignment",
    "align_with_script",
    "bounded_edit_distance",
    "context_lines",
    "count_matches",
    "edit_distance",
    "ingest_work",
    "length_prefilter",
    "list_corpora",
    "load_corpus",
    "normalize_query",
    "normalize_word",
    "parse_work_document",
    "save_corpus",
    "search",
    "search_fixed",
    "search_order_free",
    "tokenize_line",
]
