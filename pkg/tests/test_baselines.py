"""Inverted index plus BM25 and TF-IDF scoring, checked against direct
recomputation from the raw document texts."""

import random

import pytest
from helpers import random_docs as _random_docs
from helpers import reference_bm25, reference_tfidf

from trieval.baselines import (
    InvertedIndex,
    analyze,
    bm25_search,
    build_inverted_index,
    load_index,
    save_index,
    tfidf_search,
)
from trieval.corpus import Corpus, Document, Sentence
from trieval.errors import EmptyCorpus, ParseError


def _corpus(docs: dict[str, str]) -> Corpus:
    """docs: title -> single-sentence body text."""
    return Corpus(
        Document(title=t, sentences=[Sentence(text=body)] if body else [])
        for t, body in docs.items()
    )


class TestAnalyze:
    def test_lowercases_and_splits_on_punctuation(self):
        assert list(analyze("Hello, World-2!")) == ["hello", "world", "2"]

    def test_unicode_letters_kept(self):
        assert list(analyze("Café au lait")) == ["café", "au", "lait"]

    def test_empty(self):
        assert list(analyze("")) == []
        assert list(analyze("--- !!")) == []


class TestBuildIndex:
    def test_empty_corpus_rejected(self):
        with pytest.raises(EmptyCorpus):
            build_inverted_index(Corpus())
        with pytest.raises(EmptyCorpus):
            InvertedIndex([], [], {})

    def test_title_text_is_indexed(self):
        index = build_inverted_index(_corpus({"Apple": "x y x"}))
        assert index.postings["apple"] == [(0, 1)]
        assert index.postings["x"] == [(0, 2)]
        assert index.postings["y"] == [(0, 1)]
        assert index.doc_lengths == [4]

    def test_avg_doc_length(self):
        index = build_inverted_index(_corpus({"A": "w x y", "B": "u v w x y"}))
        assert index.doc_lengths == [4, 6]
        assert index.avg_doc_length == 5.0

    def test_document_frequency(self):
        index = build_inverted_index(_corpus({"A": "x", "B": "x y", "C": "z"}))
        assert index.document_frequency("x") == 2
        assert index.document_frequency("y") == 1
        assert index.document_frequency("nope") == 0

    def test_postings_sorted_by_doc_id(self, toy_corpus):
        index = build_inverted_index(toy_corpus)
        for plist in index.postings.values():
            ids = [d for d, _ in plist]
            assert ids == sorted(ids)
            assert all(tf >= 1 for _, tf in plist)


class TestBM25:
    def test_absent_term_returns_nothing(self):
        index = build_inverted_index(_corpus({"A": "x y"}))
        assert bm25_search(index, "zebra").ranking == []

    def test_tf_ordering(self):
        index = build_inverted_index(_corpus({"D1": "x x y", "D2": "x y y", "D3": "z z z"}))
        ranked = bm25_search(index, "x")
        assert [t for t, _ in ranked.ranking] == ["D1", "D2"]

    def test_query_is_a_multiset(self):
        index = build_inverted_index(_corpus({"D1": "x y", "D2": "y z"}))
        single = dict(bm25_search(index, "x").ranking)["D1"]
        double = dict(bm25_search(index, "x x").ranking)["D1"]
        assert double == pytest.approx(2 * single, abs=1e-12)

    def test_matches_direct_formula(self):
        docs = {
            "Alpha": "rain rain river",
            "Bravo": "river stone",
            "Charlie": "stone stone stone sun",
            "Delta": "sun rain",
            "Echo": "moss",
        }
        index = build_inverted_index(_corpus(docs))
        for query in ("rain", "river stone", "sun sun moss", "rain stone sun moss"):
            expected = reference_bm25(docs, query)
            got = dict(bm25_search(index, query, k=100).ranking)
            assert set(got) == set(expected)
            for title, score in expected.items():
                assert got[title] == pytest.approx(score, abs=1e-9)

    def test_matches_direct_formula_on_random_corpora(self):
        rng = random.Random(88)
        for trial in range(20):
            docs = _random_docs(rng, rng.randint(2, 100))
            index = build_inverted_index(_corpus(docs))
            query = " ".join(rng.choice(["apple", "baker", "cobalt", "zzz"]) for _ in range(3))
            expected = reference_bm25(docs, query)
            got = dict(bm25_search(index, query, k=10**6).ranking)
            assert set(got) == set(expected)
            for title, score in expected.items():
                assert got[title] == pytest.approx(score, abs=1e-9)

    def test_custom_k1_b(self):
        docs = {"A": "x x x y", "B": "x y y y"}
        index = build_inverted_index(_corpus(docs))
        got = dict(bm25_search(index, "x", k1=2.0, b=0.2).ranking)
        expected = reference_bm25(docs, "x", k1=2.0, b=0.2)
        for title, score in expected.items():
            assert got[title] == pytest.approx(score, abs=1e-9)

    def test_scores_positive_and_sorted(self, toy_corpus):
        index = build_inverted_index(toy_corpus)
        ranked = bm25_search(index, "planet orbit sun", k=50).ranking
        assert ranked, "toy corpus should match astronomy terms"
        assert all(score > 0 for _, score in ranked)
        keys = [(-s, t) for t, s in ranked]
        assert keys == sorted(keys)

    def test_tie_breaks_lexicographic(self):
        # Same body, distinct single-token titles not in the query: scores tie.
        index = build_inverted_index(_corpus({"Bb": "x y", "Aa": "x y"}))
        ranked = bm25_search(index, "x").ranking
        assert [t for t, _ in ranked] == ["Aa", "Bb"]
        assert ranked[0][1] == pytest.approx(ranked[1][1], abs=1e-15)

    def test_k_truncates(self):
        docs = {f"D{i}": "x" for i in range(9)}
        index = build_inverted_index(_corpus(docs))
        assert len(bm25_search(index, "x", k=4).ranking) == 4
        with pytest.raises(ValueError):
            bm25_search(index, "x", k=0)


class TestTfidf:
    def test_identical_doc_and_query(self):
        index = build_inverted_index(_corpus({"A": "", "B": "zebra"}))
        # Document B is "b zebra"; a query with the same two tokens is parallel
        # to its vector, so cosine is exactly 1.
        ranked = tfidf_search(index, "b zebra").ranking
        assert ranked[0][0] == "B"
        assert ranked[0][1] == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_query_matches_nothing(self):
        index = build_inverted_index(_corpus({"A": "x", "B": "y"}))
        assert tfidf_search(index, "zebra").ranking == []

    def test_term_in_every_doc_contributes_nothing(self):
        index = build_inverted_index(_corpus({"A": "common x a", "B": "common y b"}))
        assert tfidf_search(index, "common").ranking == []

    def test_matches_dense_cosine(self):
        docs = {
            "Alpha": "rain rain river",
            "Bravo": "river stone",
            "Charlie": "stone stone stone sun",
            "Delta": "sun rain",
            "Echo": "moss",
        }
        index = build_inverted_index(_corpus(docs))
        for query in ("rain river", "stone", "sun moss rain", "moss moss moss"):
            expected = reference_tfidf(docs, query)
            got = dict(tfidf_search(index, query, k=100).ranking)
            assert set(got) == set(expected)
            for title, score in expected.items():
                assert got[title] == pytest.approx(score, abs=1e-9)

    def test_matches_dense_cosine_on_random_corpora(self):
        rng = random.Random(89)
        for trial in range(20):
            docs = _random_docs(rng, rng.randint(2, 100))
            index = build_inverted_index(_corpus(docs))
            query = " ".join(rng.choice(["apple", "baker", "cobalt", "zzz"]) for _ in range(3))
            expected = reference_tfidf(docs, query)
            got = dict(tfidf_search(index, query, k=10**6).ranking)
            assert set(got) == set(expected)
            for title, score in expected.items():
                assert got[title] == pytest.approx(score, abs=1e-9)

    def test_scores_are_cosines(self, toy_corpus):
        index = build_inverted_index(toy_corpus)
        ranked = tfidf_search(index, "largest planet in the solar system", k=50).ranking
        assert ranked
        for _, score in ranked:
            assert 0.0 < score <= 1.0 + 1e-12

    def test_k_validation(self):
        index = build_inverted_index(_corpus({"A": "x"}))
        with pytest.raises(ValueError):
            tfidf_search(index, "x", k=-1)


class TestIndexCodec:
    def test_roundtrip(self, tmp_path, toy_corpus):
        index = build_inverted_index(toy_corpus, index_type="tfidf")
        path = tmp_path / "index.bin"
        save_index(index, path)
        loaded = load_index(path)
        assert loaded.doc_titles == index.doc_titles
        assert loaded.doc_lengths == index.doc_lengths
        assert loaded.postings == index.postings
        assert loaded.index_type == "tfidf"

    def test_rebuild_is_byte_identical(self, tmp_path, toy_corpus):
        p1, p2 = tmp_path / "a.bin", tmp_path / "b.bin"
        save_index(build_inverted_index(toy_corpus), p1)
        save_index(build_inverted_index(toy_corpus), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_search_results_survive_roundtrip(self, tmp_path, toy_corpus):
        index = build_inverted_index(toy_corpus)
        path = tmp_path / "index.bin"
        save_index(index, path)
        loaded = load_index(path)
        for query in ("mars rover", "smallest planet", "telescope lens"):
            assert bm25_search(loaded, query).ranking == bm25_search(index, query).ranking
            assert tfidf_search(loaded, query).ranking == tfidf_search(index, query).ranking

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "index.bin"
        path.write_bytes(b"XXXX" + b"\x00" * 20)
        with pytest.raises(ParseError, match="DRIX"):
            load_index(path)

    def test_length_mismatch(self, tmp_path, toy_corpus):
        path = tmp_path / "index.bin"
        save_index(build_inverted_index(toy_corpus), path)
        path.write_bytes(path.read_bytes() + b"tail")
        with pytest.raises(ParseError, match="length mismatch"):
            load_index(path)
