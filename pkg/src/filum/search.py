"""Corpus-scale phrase search: fixed word order and order-free modes.

Fixed-order search joins each window of exactly n consecutive tokens with
single spaces and aligns it against the joined query, so character-level
indels absorb small length differences. Order-free search assigns each query
word to a distinct token inside a candidate span whose first and last tokens
must both be matched; unmatched tokens strictly inside the span make up the
interval. Both modes are exact under the cutoff: banding and the length
prefilter never discard a span whose true cost fits the budget.

Works are searched independently and results merged into a deterministic
global order (work order, start token index, distance), so per-work tasks
can run in parallel without affecting output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations

from filum.align import EditScript, align_with_script, bounded_edit_distance
from filum.corpus import Corpus, Work, context_lines, locus_label, span_surface
from filum.normalize import NormalizerConfig, normalize_word

MAX_QUERY_WORDS = 8


class SearchMode(str, Enum):
    FIXED = "fixed"
    FREE = "free"


class UnknownWorkError(LookupError):
    """A work id in the query filter does not exist in the corpus."""


def normalize_query(text: str, config: NormalizerConfig) -> tuple[str, ...]:
    """Normalize raw query text into query words under the corpus policy."""
    words = [normalize_word(chunk, config) for chunk in text.split()]
    return tuple(w for w in words if w)


@dataclass(frozen=True)
class Query:
    """A normalized query plus its search budget.

    ``max_interval`` only applies in order-free mode; fixed-order windows
    always contain exactly as many tokens as the query has words.
    """

    words: tuple[str, ...]
    mode: SearchMode = SearchMode.FIXED
    max_distance: int = 2
    max_interval: int = 0
    work_filter: frozenset[str] | None = None

    def __post_init__(self) -> None:
        if not 1 <= len(self.words) <= MAX_QUERY_WORDS:
            raise ValueError(
                f"query must have 1..{MAX_QUERY_WORDS} words, got {len(self.words)}"
            )
        for word in self.words:
            if not word or not all("a" <= c <= "z" for c in word):
                raise ValueError(f"query word {word!r} is not normalized")
        if self.max_distance < 0:
            raise ValueError("max_distance must be >= 0")
        if self.max_interval < 0:
            raise ValueError("max_interval must be >= 0")

    @property
    def effective_interval(self) -> int:
        return self.max_interval if self.mode is SearchMode.FREE else 0


@dataclass(frozen=True)
class WordAlignment:
    """One query word assigned to one target token in an order-free match."""

    query_index: int
    query_word: str
    token_index: int
    token_surface: str
    token_normalized: str
    distance: int
    script: EditScript


@dataclass(frozen=True)
class Match:
    """One search hit: a token span with its alignment evidence."""

    work_id: str
    start_index: int
    end_index: int
    locus: str
    total_distance: int
    interval: int
    mode: SearchMode
    surface_text: str
    query_normalized: str
    window_normalized: str
    context: tuple[tuple[str, str], ...]
    script: EditScript | None = None
    assignment: tuple[WordAlignment, ...] = field(default=())

    def to_dict(self) -> dict:
        """Flat JSON-ready rendering; shared by the CLI and the HTTP service."""
        return {
            "work_id": self.work_id,
            "start_token": self.start_index,
            "end_token": self.end_index,
            "locus": self.locus,
            "total_distance": self.total_distance,
            "interval": self.interval,
            "mode": self.mode.value,
            "surface_text": self.surface_text,
            "query_normalized": self.query_normalized,
            "window_normalized": self.window_normalized,
            "context": [{"locus": loc, "text": text} for loc, text in self.context],
            "script": self.script.to_dicts() if self.script is not None else None,
            "assignment": [
                {
                    "query_index": wa.query_index,
                    "query_word": wa.query_word,
                    "token_index": wa.token_index,
                    "token_surface": wa.token_surface,
                    "token_normalized": wa.token_normalized,
                    "distance": wa.distance,
                    "script": wa.script.to_dicts(),
                }
                for wa in self.assignment
            ]
            if self.assignment
            else None,
        }


def length_prefilter(query_len: int, window_len: int, max_distance: int) -> bool:
    """True to keep the window, False to skip it.

    Skips only when the character-length difference already exceeds the
    budget; by the indel lower bound such windows can never be matches.
    """
    return abs(query_len - window_len) <= max_distance


def _selected_works(corpus: Corpus, query: Query) -> list[Work]:
    if query.work_filter is None:
        return list(corpus.works)
    known = {work.work_id for work in corpus.works}
    missing = sorted(query.work_filter - known)
    if missing:
        raise UnknownWorkError(f"unknown work id: {', '.join(missing)}")
    return [work for work in corpus.works if work.work_id in query.work_filter]


def _make_match(
    work: Work,
    start: int,
    end: int,
    query: Query,
    total: int,
    interval: int,
    context_radius: int,
    script: EditScript | None,
    assignment: tuple[WordAlignment, ...],
) -> Match:
    tokens = work.tokens
    return Match(
        work_id=work.work_id,
        start_index=start,
        end_index=end,
        locus=locus_label(work, start, end),
        total_distance=total,
        interval=interval,
        mode=query.mode,
        surface_text=span_surface(work, start, end),
        query_normalized=" ".join(query.words),
        window_normalized=" ".join(t.normalized for t in tokens[start : end + 1]),
        context=tuple(context_lines(work, (start, end), context_radius)),
        script=script,
        assignment=assignment,
    )


def search_fixed(corpus: Corpus, query: Query, context_radius: int = 1) -> list[Match]:
    """All windows of exactly len(query.words) tokens within the cutoff.

    Windows may cross line boundaries inside a work, never across works.
    Every qualifying window is reported, including overlapping ones.
    """
    if query.mode is not SearchMode.FIXED:
        raise ValueError("search_fixed requires a fixed-order query")
    n = len(query.words)
    k = query.max_distance
    joined = " ".join(query.words)
    qlen = len(joined)
    matches: list[Match] = []
    for work in _selected_works(corpus, query):
        norms = [t.normalized for t in work.tokens]
        count = len(norms)
        if count < n:
            continue
        # Prefix sums give each window's joined length without building it.
        prefix = [0] * (count + 1)
        for i, w in enumerate(norms):
            prefix[i + 1] = prefix[i] + len(w)
        joiners = n - 1
        for start in range(count - n + 1):
            wlen = prefix[start + n] - prefix[start] + joiners
            if not length_prefilter(qlen, wlen, k):
                continue
            window = " ".join(norms[start : start + n])
            d = bounded_edit_distance(joined, window, k)
            if d is None:
                continue
            _, script = align_with_script(joined, window)
            matches.append(
                _make_match(
                    work, start, start + n - 1, query, d, 0, context_radius, script, ()
                )
            )
    return matches


def _best_assignment(
    words: tuple[str, ...],
    costs: list[list[int | None]],
) -> tuple[int, tuple[int, ...]] | None:
    """Minimum-cost injective assignment over a span's cost matrix.

    ``costs[qi][pos]`` is the per-word distance or None when over budget.
    Span endpoints (first and last position) must both be assigned. Returns
    (total, token positions ordered by query word index); ties break on the
    lexicographically smallest position tuple so results are reproducible.
    """
    n = len(words)
    span_len = len(costs[0])
    if n == 1:
        if span_len != 1:
            return None
        c = costs[0][0]
        return None if c is None else (c, (0,))
    best: tuple[int, tuple[int, ...]] | None = None
    interior = range(1, span_len - 1)
    for inner in combinations(interior, n - 2):
        positions = (0, *inner, span_len - 1)
        for perm in permutations(range(n)):
            total = 0
            ok = True
            for slot, qi in enumerate(perm):
                c = costs[qi][positions[slot]]
                if c is None:
                    ok = False
                    break
                total += c
            if not ok:
                continue
            by_query = [0] * n
            for slot, qi in enumerate(perm):
                by_query[qi] = positions[slot]
            candidate = (total, tuple(by_query))
            if best is None or candidate < best:
                best = candidate
    return best


def search_order_free(
    corpus: Corpus, query: Query, context_radius: int = 1
) -> list[Match]:
    """Order-free matches: each query word aligned to a distinct token.

    Candidate spans hold between n and n + max_interval consecutive tokens
    with both endpoints matched. Per start token only the best span survives
    (lowest total distance, then smallest span).
    """
    if query.mode is not SearchMode.FREE:
        raise ValueError("search_order_free requires an order-free query")
    words = query.words
    n = len(words)
    k = query.max_distance
    max_span = n + query.max_interval
    matches: list[Match] = []
    for work in _selected_works(corpus, query):
        norms = [t.normalized for t in work.tokens]
        count = len(norms)
        pair_cost: dict[tuple[int, str], int | None] = {}

        def cost_of(qi: int, token_norm: str) -> int | None:
            key = (qi, token_norm)
            if key not in pair_cost:
                pair_cost[key] = bounded_edit_distance(words[qi], token_norm, k)
            return pair_cost[key]

        for start in range(count):
            best: tuple[int, int, tuple[int, ...]] | None = None  # (total, L, pos)
            for span_len in range(n, max_span + 1):
                if start + span_len > count:
                    break
                costs = [
                    [cost_of(qi, norms[start + pos]) for pos in range(span_len)]
                    for qi in range(n)
                ]
                found = _best_assignment(words, costs)
                if found is None:
                    continue
                total, positions = found
                if total > k:
                    continue
                if best is None or (total, span_len) < (best[0], best[1]):
                    best = (total, span_len, positions)
            if best is None:
                continue
            total, span_len, positions = best
            assignment = []
            for qi in range(n):
                token = work.tokens[start + positions[qi]]
                d, script = align_with_script(words[qi], token.normalized)
                assignment.append(
                    WordAlignment(
                        query_index=qi,
                        query_word=words[qi],
                        token_index=token.token_index,
                        token_surface=token.surface,
                        token_normalized=token.normalized,
                        distance=d,
                        script=script,
                    )
                )
            matches.append(
                _make_match(
                    work,
                    start,
                    start + span_len - 1,
                    query,
                    total,
                    span_len - n,
                    context_radius,
                    None,
                    tuple(assignment),
                )
            )
    return matches


def search(corpus: Corpus, query: Query, context_radius: int = 1) -> list[Match]:
    """Dispatch on query mode."""
    if query.mode is SearchMode.FIXED:
        return search_fixed(corpus, query, context_radius)
    return search_order_free(corpus, query, context_radius)


def count_matches(corpus: Corpus, query: Query) -> int:
    """Number of matches the corresponding search would return."""
    return len(search(corpus, query, context_radius=0))
