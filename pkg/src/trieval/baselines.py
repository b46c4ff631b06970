"""Sparse-vector retrieval baselines: Okapi BM25 and ltc TF-IDF cosine.

Both run over one inverted index built from title + sentence text with a
deliberately plain analysis chain (Unicode lowercasing, split on
non-alphanumeric runs, no stemming, no stopwords) so scores are exactly
reproducible from the postings by hand.

The index serializes into a small binary container (magic ``DRIX``) whose
payload is canonical JSON; rebuilding from an identical corpus yields an
identical file.
"""

from __future__ import annotations

import json
import math
import struct
from collections import Counter
from pathlib import Path
from typing import Iterator

from .corpus import Corpus
from .decode import RankedResult
from .errors import EmptyCorpus, ParseError

_INDEX_MAGIC = b"DRIX"
_INDEX_VERSION = 1

BM25_K1 = 1.2
BM25_B = 0.75


def analyze(text: str) -> Iterator[str]:
    """Lowercased maximal alphanumeric runs; everything else is a separator."""
    run: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            run.append(ch)
        elif run:
            yield "".join(run)
            run.clear()
    if run:
        yield "".join(run)


class InvertedIndex:
    """Term → postings [(doc id, term frequency)], immutable after build."""

    def __init__(
        self,
        doc_titles: list[str],
        doc_lengths: list[int],
        postings: dict[str, list[tuple[int, int]]],
        index_type: str = "bm25",
    ):
        if not doc_titles:
            raise EmptyCorpus("inverted index needs at least one document")
        if len(doc_titles) != len(doc_lengths):
            raise ValueError("doc_titles and doc_lengths length mismatch")
        self.doc_titles = doc_titles
        self.doc_lengths = doc_lengths
        self.postings = postings
        self.index_type = index_type
        self.doc_count = len(doc_titles)
        self.avg_doc_length = sum(doc_lengths) / self.doc_count
        self._tfidf_norms: list[float] | None = None

    def document_frequency(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def _doc_norms(self) -> list[float]:
        # L2 norms of the ltc document vectors, shared by all tfidf queries.
        if self._tfidf_norms is None:
            sq = [0.0] * self.doc_count
            for term, plist in self.postings.items():
                idf = math.log(self.doc_count / len(plist))
                if idf == 0.0:
                    continue
                for doc_id, tf in plist:
                    w = (1.0 + math.log(tf)) * idf
                    sq[doc_id] += w * w
            self._tfidf_norms = [math.sqrt(v) for v in sq]
        return self._tfidf_norms


def build_inverted_index(corpus: Corpus, index_type: str = "bm25") -> InvertedIndex:
    """Index every document as its title plus all sentence text."""
    if len(corpus) == 0:
        raise EmptyCorpus("cannot index an empty corpus")
    doc_titles: list[str] = []
    doc_lengths: list[int] = []
    postings: dict[str, list[tuple[int, int]]] = {}
    for doc_id, doc in enumerate(corpus):
        text = " ".join([doc.title] + [sent.text for sent in doc.sentences])
        counts = Counter(analyze(text))
        doc_titles.append(doc.title)
        doc_lengths.append(sum(counts.values()))
        for term, tf in counts.items():
            postings.setdefault(term, []).append((doc_id, tf))
    # Documents are visited in insertion order, so each posting list arrives
    # sorted by doc id. Terms are stored in sorted order to match the
    # serialized form exactly; float accumulation order then agrees between a
    # fresh build and a loaded index, keeping scores bit-identical.
    return InvertedIndex(doc_titles, doc_lengths, dict(sorted(postings.items())), index_type)


def _top_k(scores: dict[int, float], index: InvertedIndex, k: int) -> list[tuple[str, float]]:
    pairs = [
        (index.doc_titles[doc_id], score) for doc_id, score in scores.items() if score > 0.0
    ]
    pairs.sort(key=lambda p: (-p[1], p[0]))
    return pairs[:k]


def bm25_search(
    index: InvertedIndex,
    query: str,
    k: int = 100,
    k1: float = BM25_K1,
    b: float = BM25_B,
    query_id: str = "",
) -> RankedResult:
    """Okapi BM25 over the query term multiset; only positive scores rank."""
    if k < 1:
        raise ValueError("k must be >= 1")
    scores: dict[int, float] = {}
    for term in analyze(query):
        plist = index.postings.get(term)
        if not plist:
            continue
        idf = math.log(1.0 + (index.doc_count - len(plist) + 0.5) / (len(plist) + 0.5))
        for doc_id, tf in plist:
            denom = tf + k1 * (1.0 - b + b * index.doc_lengths[doc_id] / index.avg_doc_length)
            scores[doc_id] = scores.get(doc_id, 0.0) + idf * tf / denom
    return RankedResult(query_id=query_id, ranking=_top_k(scores, index, k))


def tfidf_search(
    index: InvertedIndex, query: str, k: int = 100, query_id: str = ""
) -> RankedResult:
    """Cosine between ltc-weighted query and document vectors.

    Weights are (1 + ln tf) · ln(N/df) on both sides, L2-normalized; terms
    appearing in every document (idf 0) or in none contribute nothing.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    query_tf = Counter(analyze(query))
    query_weights: dict[str, float] = {}
    for term, tf in query_tf.items():
        df = index.document_frequency(term)
        if df == 0:
            continue
        idf = math.log(index.doc_count / df)
        if idf == 0.0:
            continue
        query_weights[term] = (1.0 + math.log(tf)) * idf
    query_norm = math.sqrt(sum(w * w for w in query_weights.values()))
    if query_norm == 0.0:
        return RankedResult(query_id=query_id, ranking=[])
    norms = index._doc_norms()
    dots: dict[int, float] = {}
    for term, qw in query_weights.items():
        idf = math.log(index.doc_count / index.document_frequency(term))
        for doc_id, tf in index.postings[term]:
            dots[doc_id] = dots.get(doc_id, 0.0) + qw * (1.0 + math.log(tf)) * idf
    scores = {
        doc_id: dot / (query_norm * norms[doc_id])
        for doc_id, dot in dots.items()
        if norms[doc_id] > 0.0
    }
    return RankedResult(query_id=query_id, ranking=_top_k(scores, index, k))


def save_index(index: InvertedIndex, path: str | Path) -> None:
    """DRIX container: magic, version, type string, canonical-JSON payload."""
    payload = {
        "doc_titles": index.doc_titles,
        "doc_lengths": index.doc_lengths,
        "postings": {term: [[d, tf] for d, tf in plist] for term, plist in index.postings.items()},
    }
    body = json.dumps(payload, ensure_ascii=False, separators=(",", ":"), sort_keys=True)
    encoded_type = index.index_type.encode("utf-8")
    encoded_body = body.encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_INDEX_MAGIC)
        fh.write(struct.pack("<HH", _INDEX_VERSION, len(encoded_type)))
        fh.write(encoded_type)
        fh.write(struct.pack("<Q", len(encoded_body)))
        fh.write(encoded_body)


def load_index(path: str | Path) -> InvertedIndex:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != _INDEX_MAGIC:
        raise ParseError(f"{path}: not a DRIX index file")
    version, type_len = struct.unpack_from("<HH", data, 4)
    if version != _INDEX_VERSION:
        raise ParseError(f"{path}: unsupported DRIX version {version}")
    pos = 8
    index_type = data[pos : pos + type_len].decode("utf-8")
    pos += type_len
    (body_len,) = struct.unpack_from("<Q", data, pos)
    pos += 8
    if pos + body_len != len(data):
        raise ParseError(f"{path}: payload length mismatch")
    payload = json.loads(data[pos:].decode("utf-8"))
    postings = {
        term: [(int(d), int(tf)) for d, tf in plist]
        for term, plist in payload["postings"].items()
    }
    return InvertedIndex(
        doc_titles=list(payload["doc_titles"]),
        doc_lengths=[int(x) for x in payload["doc_lengths"]],
        postings=postings,
        index_type=index_type,
    )
