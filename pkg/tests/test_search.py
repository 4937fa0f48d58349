import random

import pytest

from corpusgen import random_corpus, random_word
from filum.align import edit_distance
from filum.corpus import Corpus, Work
from filum.normalize import normalize_word
from filum.search import (
    Match,
    Query,
    SearchMode,
    UnknownWorkError,
    count_matches,
    length_prefilter,
    normalize_query,
    search,
    search_fixed,
    search_order_free,
)
from oracle import naive_edit_distance, naive_search_fixed, naive_search_free


def work_from_text(work_id: str, text: str) -> Work:
    lines = tuple((str(i + 1), line) for i, line in enumerate(text.splitlines()))
    return Work.from_lines(work_id, "anon", work_id, "", lines)


def fixed_query(text: str, k: int, works=None) -> Query:
    return Query(
        words=tuple(text.split()),
        mode=SearchMode.FIXED,
        max_distance=k,
        work_filter=frozenset(works) if works else None,
    )


def free_query(text: str, k: int, m: int, works=None) -> Query:
    return Query(
        words=tuple(text.split()),
        mode=SearchMode.FREE,
        max_distance=k,
        max_interval=m,
        work_filter=frozenset(works) if works else None,
    )


def spans(matches: list[Match]):
    return [
        (m.work_id, m.start_index, m.end_index, m.total_distance, m.interval)
        for m in matches
    ]


class TestQueryValidation:
    def test_word_count_limits(self):
        with pytest.raises(ValueError):
            Query(words=())
        with pytest.raises(ValueError):
            Query(words=tuple("abcdefghi"))

    def test_words_must_be_normalized(self):
        with pytest.raises(ValueError):
            Query(words=("Arma",))
        with pytest.raises(ValueError):
            Query(words=("arma virumque",))

    def test_budgets_non_negative(self):
        with pytest.raises(ValueError):
            Query(words=("arma",), max_distance=-1)
        with pytest.raises(ValueError):
            Query(words=("arma",), max_interval=-1)

    def test_interval_ignored_in_fixed_mode(self):
        q = Query(words=("arma",), mode=SearchMode.FIXED, max_interval=3)
        assert q.effective_interval == 0

    def test_normalize_query(self):
        from filum.normalize import DEFAULT_CONFIG

        assert normalize_query("Arma Virumque!", DEFAULT_CONFIG) == (
            "arma",
            "uirumque",
        )
        assert normalize_query("... 12 ...", DEFAULT_CONFIG) == ()


class TestLengthPrefilter:
    @pytest.mark.parametrize(
        "qlen,wlen,k,keep",
        [(13, 12, 2, True), (13, 20, 3, False), (5, 5, 0, True), (5, 6, 0, False)],
    )
    def test_examples(self, qlen, wlen, k, keep):
        assert length_prefilter(qlen, wlen, k) is keep

    def test_skip_implies_over_budget(self):
        rng = random.Random(29)
        for _ in range(300):
            a = "".join(rng.choice("ab") for _ in range(rng.randint(0, 15)))
            b = "".join(rng.choice("ab") for _ in range(rng.randint(0, 15)))
            k = rng.randint(0, 5)
            if not length_prefilter(len(a), len(b), k):
                assert naive_edit_distance(a, b) > k


class TestSearchFixed:
    def test_commune_nefas_fixture(self, case_corpus):
        matches = search_fixed(case_corpus, fixed_query("commune nefas", 3))
        got = {(m.work_id, m.window_normalized, m.total_distance) for m in matches}
        assert got == {
            ("thyestes", "commune nefas", 0),
            ("aeneid", "immane nefas", 3),
        }

    def test_acheronta_fixture(self, case_corpus):
        matches = search_fixed(case_corpus, fixed_query("acheronta uidebo", 6))
        got = {(m.window_normalized, m.total_distance) for m in matches}
        assert got == {("acheronta mouebo", 3), ("simoenta uidebo", 6)}

    def test_verbatim_window_self_retrieval(self, case_corpus):
        work = case_corpus.works[0]
        window = work.tokens[3:5]
        words = tuple(t.normalized for t in window)
        matches = search_fixed(case_corpus, fixed_query(" ".join(words), 0))
        assert (work.work_id, 3, 4, 0, 0) in spans(matches)

    def test_windows_cross_lines_not_works(self):
        # The phrase straddles lines 1-2 of work a; its halves sit in
        # different works for b/c and must not join across the boundary.
        a = work_from_text("a", "primus ibi ante\nomnis agmine magno")
        b = work_from_text("b", "unus et ante")
        c = work_from_text("c", "omnis ab alto")
        corpus = Corpus("x", (a, b, c))
        matches = search_fixed(corpus, fixed_query("ante omnis", 0))
        assert spans(matches) == [("a", 2, 3, 0, 0)]

    def test_overlapping_windows_all_reported(self):
        work = work_from_text("a", "na na na")
        corpus = Corpus("x", (work,))
        matches = search_fixed(corpus, fixed_query("na na", 0))
        assert spans(matches) == [("a", 0, 1, 0, 0), ("a", 1, 2, 0, 0)]

    def test_unknown_work_filter(self, case_corpus):
        with pytest.raises(UnknownWorkError, match="nowhere"):
            search_fixed(case_corpus, fixed_query("commune nefas", 3, works=["nowhere"]))

    def test_empty_corpus(self):
        corpus = Corpus("empty", ())
        assert search_fixed(corpus, fixed_query("arma", 2)) == []

    def test_mode_mismatch_rejected(self, case_corpus):
        with pytest.raises(ValueError):
            search_fixed(case_corpus, free_query("arma", 1, 0))

    def test_match_scripts_replay(self, case_corpus):
        for m in search_fixed(case_corpus, fixed_query("commune nefas", 3)):
            assert m.script is not None
            assert m.script.apply_to(m.query_normalized) == m.window_normalized
            assert m.script.distance == m.total_distance


class TestSearchOrderFree:
    def test_interval_hit(self, case_corpus):
        matches = search_order_free(
            case_corpus, free_query("dignum facinus", 4, 2, works=["progne"])
        )
        assert len(matches) == 1
        m = matches[0]
        assert (m.total_distance, m.interval) == (2, 1)
        assert [
            (wa.query_word, wa.token_normalized, wa.distance) for wa in m.assignment
        ] == [("dignum", "dirum", 2), ("facinus", "facinus", 0)]

    def test_reverse_order_hit(self, case_corpus):
        matches = search_order_free(
            case_corpus, free_query("dirum facinus", 4, 2, works=["medea"])
        )
        assert len(matches) == 1
        m = matches[0]
        assert (m.total_distance, m.interval) == (0, 0)
        # Words matched in reverse order: dirum comes second in the text.
        assert m.assignment[0].token_index > m.assignment[1].token_index

    def test_adjacent_pair_exact(self):
        work = work_from_text("a", "clarus ubi dux erat")
        corpus = Corpus("x", (work,))
        matches = search_order_free(corpus, free_query("ubi dux", 0, 0))
        assert spans(matches) == [("a", 1, 2, 0, 0)]

    def test_endpoints_must_match(self):
        # "b" would only fit as an unmatched endpoint; no span qualifies.
        work = work_from_text("a", "xxxx b yyyy")
        corpus = Corpus("x", (work,))
        matches = search_order_free(corpus, free_query("xxxx yyyy", 0, 2))
        assert spans(matches) == [("a", 0, 2, 0, 1)]
        assert search_order_free(corpus, free_query("xxxx yyyy", 0, 0)) == []

    def test_best_span_per_start(self):
        # At start 0 both L=2 (cost 1) and L=3 (cost 0) qualify; the lower
        # cost wins even though it is the longer span.
        work = work_from_text("a", "alpha betx beta")
        corpus = Corpus("x", (work,))
        matches = search_order_free(corpus, free_query("alpha beta", 1, 1))
        by_start = {m.start_index: m for m in matches}
        assert by_start[0].total_distance == 0
        assert by_start[0].interval == 1

    def test_single_word_matches_fixed(self, case_corpus):
        fixed = search_fixed(case_corpus, fixed_query("nefas", 1))
        free = search_order_free(case_corpus, free_query("nefas", 1, 0))
        assert spans(fixed) == spans(free)

    def test_assignment_scripts_replay(self, case_corpus):
        matches = search_order_free(
            case_corpus, free_query("dignum facinus", 4, 2, works=["progne"])
        )
        for m in matches:
            for wa in m.assignment:
                assert wa.script.apply_to(wa.query_word) == wa.token_normalized
                assert wa.script.distance == wa.distance


class TestCountMatches:
    def test_seeded_count(self):
        work = work_from_text(
            "a",
            "lumen adest quinque\nlumen adest iterum\nlumen adest rursus\n"
            "lumen adest denuo\nlumen adest demum",
        )
        corpus = Corpus("x", (work,))
        assert count_matches(corpus, fixed_query("lumen adest", 0)) == 5

    def test_empty_corpus(self):
        assert count_matches(Corpus("e", ()), fixed_query("arma", 2)) == 0

    def test_absent_exact_query(self, case_corpus):
        assert count_matches(case_corpus, fixed_query("zzzz qqqq", 0)) == 0


class TestOracleEquivalence:
    def test_fixed_random_small(self):
        rng = random.Random(31)
        for _ in range(30):
            corpus = random_corpus(rng, rng.randint(20, 120), works=rng.randint(1, 3))
            n = rng.randint(1, 4)
            words = tuple(random_word(rng) for _ in range(n))
            k = rng.randint(0, 6)
            got = spans(search_fixed(corpus, fixed_query(" ".join(words), k)))
            want = [(w, s, e, d, 0) for w, s, e, d in naive_search_fixed(corpus, words, k)]
            assert got == want

    def test_free_random_small(self):
        rng = random.Random(37)
        for _ in range(20):
            corpus = random_corpus(rng, rng.randint(15, 80), works=rng.randint(1, 2))
            n = rng.randint(1, 3)
            words = tuple(random_word(rng) for _ in range(n))
            k = rng.randint(0, 5)
            m = rng.randint(0, 3)
            got = spans(search_order_free(corpus, free_query(" ".join(words), k, m)))
            want = naive_search_free(corpus, words, k, m)
            assert got == want

    def test_queries_drawn_from_corpus_text(self):
        # Sampling query words from the corpus makes hits likely, so the
        # comparison exercises non-empty result sets too.
        rng = random.Random(41)
        for _ in range(20):
            corpus = random_corpus(rng, 60, works=1, alphabet="abc", max_word_len=4)
            tokens = [t.normalized for t in corpus.works[0].tokens]
            start = rng.randrange(len(tokens) - 2)
            words = tuple(tokens[start : start + 2])
            k = rng.randint(0, 4)
            got = spans(search_fixed(corpus, fixed_query(" ".join(words), k)))
            want = [(w, s, e, d, 0) for w, s, e, d in naive_search_fixed(corpus, words, k)]
            assert got == want
            m = rng.randint(0, 2)
            got_free = spans(search_order_free(corpus, free_query(" ".join(words), k, m)))
            assert got_free == naive_search_free(corpus, words, k, m)


class TestInvariants:
    def test_monotonic_in_max_distance(self):
        rng = random.Random(43)
        corpus = random_corpus(rng, 100, works=2, alphabet="abc", max_word_len=4)
        words = "ab ba"
        for k in range(0, 5):
            lo = set(spans(search_fixed(corpus, fixed_query(words, k))))
            hi = set(spans(search_fixed(corpus, fixed_query(words, k + 1))))
            lo_spans = {(w, s, e) for w, s, e, _, _ in lo}
            hi_spans = {(w, s, e) for w, s, e, _, _ in hi}
            assert lo_spans <= hi_spans

    def test_monotonic_in_max_interval(self):
        rng = random.Random(47)
        corpus = random_corpus(rng, 100, works=1, alphabet="abc", max_word_len=4)
        words = "ab ba"
        starts_prev: set = set()
        for m in range(0, 4):
            matches = search_order_free(corpus, free_query(words, 3, m))
            starts = {(x.work_id, x.start_index) for x in matches}
            assert starts_prev <= starts
            starts_prev = starts

    def test_self_retrieval_random_windows(self):
        rng = random.Random(53)
        corpus = random_corpus(rng, 300, works=2)
        for _ in range(50):
            work = corpus.works[rng.randrange(len(corpus.works))]
            n = rng.randint(1, 4)
            if len(work.tokens) < n:
                continue
            start = rng.randrange(len(work.tokens) - n + 1)
            words = tuple(t.normalized for t in work.tokens[start : start + n])
            matches = search_fixed(corpus, fixed_query(" ".join(words), 0))
            assert (work.work_id, start, start + n - 1, 0, 0) in spans(matches)

    def test_match_reverification(self, case_corpus):
        for query in (
            fixed_query("commune nefas", 3),
            fixed_query("acheronta uidebo", 6),
        ):
            for m in search(case_corpus, query):
                resurfaced = " ".join(
                    normalize_word(w) for w in m.surface_text.split()
                )
                assert edit_distance(m.query_normalized, resurfaced) == m.total_distance

    def test_match_reverification_free_mode(self, case_corpus):
        for query in (
            free_query("dignum facinus", 4, 2, works=["progne"]),
            free_query("dirum facinus", 4, 2, works=["medea"]),
        ):
            for m in search(case_corpus, query):
                recomputed = sum(
                    edit_distance(wa.query_word, normalize_word(wa.token_surface))
                    for wa in m.assignment
                )
                assert recomputed == m.total_distance
                assert m.interval == (m.end_index - m.start_index + 1) - len(query.words)

    def test_deterministic_ordering(self, case_corpus):
        q = fixed_query("nefas", 2)
        first = spans(search(case_corpus, q))
        second = spans(search(case_corpus, q))
        assert first == second
        order = [(m.work_id, m.start_index) for m in search(case_corpus, q)]
        work_rank = {w.work_id: i for i, w in enumerate(case_corpus.works)}
        assert order == sorted(order, key=lambda t: (work_rank[t[0]], t[1]))
