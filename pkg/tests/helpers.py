"""Shared generators and independent reference implementations.

Everything here is deliberately written from scratch (no calls into the
search, index, or metric internals it is used to check) so tests compare
two implementations rather than one implementation with itself.
"""

from __future__ import annotations

import math
import random
import zlib

from trieval.decode import Scorer, score_step
from trieval.index import (
    END_TITLE,
    EOS_ID,
    SEP_ID,
    TitleTrie,
    Vocabulary,
    build_trie,
    build_vocabulary,
)

WORD_POOL = [
    "alder", "basalt", "cedar", "delta", "ember", "fjord", "gneiss",
    "harbor", "inlet", "juniper", "karst", "lagoon", "mesa", "nadir",
    "oxbow", "pumice", "quartz", "ridge", "shale", "tundra", "umber",
    "vale", "willow", "xenon", "yarrow", "zephyr", "atoll", "bluff",
    "crag", "dune",
]


def random_titles(rng: random.Random, n: int, max_words: int = 3) -> list[str]:
    """Distinct normalized-form titles built from a small word pool.

    A small pool forces shared prefixes, which is what stresses the trie.
    """
    titles: set[str] = set()
    attempts = 0
    while len(titles) < n and attempts < n * 50:
        attempts += 1
        words = [rng.choice(WORD_POOL) for _ in range(rng.randint(1, max_words))]
        title = " ".join(words)
        titles.add(title[0].upper() + title[1:])
    return sorted(titles)


def make_title_fixture(rng: random.Random, n_titles: int, max_words: int = 3):
    titles = random_titles(rng, n_titles, max_words)
    vocab = build_vocabulary(titles)
    trie = build_trie(titles, vocab)
    return titles, vocab, trie


def stable_noise(*key) -> float:
    """Deterministic pseudo-random float in [0, 1], stable across processes."""
    data = "|".join(str(part) for part in key).encode()
    return zlib.crc32(data) / 0xFFFFFFFF


class RandomScorer(Scorer):
    """Adversarial scorer: arbitrary but reproducible raw scores."""

    def __init__(self, seed: int = 0, spread: float = 8.0):
        self.seed = seed
        self.spread = spread

    def raw_scores(self, input_text, prefix, allowed):
        return {
            tid: (stable_noise(self.seed, input_text, *prefix, tid) - 0.5) * self.spread
            for tid in allowed
        }


def brute_force_next(token_seqs: list[tuple[int, ...]], prefix) -> set[int]:
    """Reference for allowed_next: linear scan over every tokenized title."""
    out: set[int] = set()
    ptup = tuple(prefix)
    plen = len(ptup)
    for seq in token_seqs:
        if len(seq) < plen or seq[:plen] != ptup:
            continue
        if len(seq) == plen:
            out.add(END_TITLE)
        else:
            out.add(seq[plen])
    return out


def greedy_reference(
    scorer: Scorer,
    trie: TitleTrie,
    input_text: str,
    max_titles: int = 5,
    max_len: int = 64,
):
    """Independent single-path decode equivalent to beam_search(beam=1).

    Keeps no pool: at each step it enumerates the legal continuations and
    takes the best one under the documented ordering (score descending,
    then completed-titles tuple, then token-id tuple).
    """
    tokens: tuple[int, ...] = ()
    logscore = 0.0
    completed: tuple[str, ...] = ()
    node = trie.root
    in_title = True
    finished = False
    while not finished and len(tokens) < max_len:
        if in_title:
            allowed = set(node.children)
            if node.terminal:
                allowed.add(END_TITLE)
        elif len(completed) < max_titles:
            allowed = {SEP_ID, EOS_ID}
        else:
            allowed = {EOS_ID}
        logprobs = score_step(scorer, input_text, tokens, allowed)
        options = []
        for tid in sorted(logprobs):
            cand_completed = completed + (trie.title_of(node),) if tid == END_TITLE else completed
            options.append((-(logscore + logprobs[tid]), cand_completed, tokens + (tid,), tid))
        options.sort()
        _, cand_completed, cand_tokens, tid = options[0]
        logscore += logprobs[tid]
        tokens = cand_tokens
        completed = cand_completed
        if tid == END_TITLE:
            in_title = False
        elif tid == SEP_ID:
            node = trie.root
            in_title = True
        elif tid == EOS_ID:
            finished = True
        else:
            node = node.children[tid]
    return tokens, logscore, completed, finished


def reference_rprec(ranked, answer_sets) -> float:
    best = 0.0
    for raw in answer_sets:
        s = set(raw)
        hits = sum(1 for t in ranked[: len(s)] if t in s)
        best = max(best, hits / len(s))
    return best


def reference_recall(ranked, answer_sets, k: int) -> float:
    best = 0.0
    for raw in answer_sets:
        s = set(raw)
        hits = sum(1 for t in ranked[:k] if t in s)
        best = max(best, hits / len(s))
    return best


def reference_logsumexp(values) -> float:
    top = max(values)
    return top + math.log(sum(math.exp(v - top) for v in values))


def doc_tokens(title: str, body: str) -> list[str]:
    """Independent analysis chain: ASCII alphanumeric runs, lowercased."""
    import re

    return re.findall(r"[a-z0-9]+", f"{title} {body}".lower())


def reference_bm25(docs: dict[str, str], query: str, k1=1.2, b=0.75) -> dict[str, float]:
    """Direct BM25 evaluation from raw texts, no index involved."""
    import re

    token_lists = {t: doc_tokens(t, body) for t, body in docs.items()}
    n = len(docs)
    avg_len = sum(len(v) for v in token_lists.values()) / n
    out: dict[str, float] = {}
    for term in re.findall(r"[a-z0-9]+", query.lower()):
        df = sum(1 for toks in token_lists.values() if term in toks)
        if df == 0:
            continue
        idf = math.log(1.0 + (n - df + 0.5) / (df + 0.5))
        for title, toks in token_lists.items():
            tf = toks.count(term)
            if tf == 0:
                continue
            denom = tf + k1 * (1.0 - b + b * len(toks) / avg_len)
            out[title] = out.get(title, 0.0) + idf * tf / denom
    return {t: s for t, s in out.items() if s > 0.0}


def reference_tfidf(docs: dict[str, str], query: str) -> dict[str, float]:
    """Dense ltc cosine via numpy over the full vocabulary."""
    import re
    from collections import Counter

    import numpy as np

    token_lists = {t: doc_tokens(t, body) for t, body in docs.items()}
    titles = list(token_lists)
    vocab = sorted({tok for toks in token_lists.values() for tok in toks})
    col = {term: i for i, term in enumerate(vocab)}
    n = len(titles)
    df = np.zeros(len(vocab))
    for toks in token_lists.values():
        for term in set(toks):
            df[col[term]] += 1
    idf = np.where(df > 0, np.log(n / np.maximum(df, 1)), 0.0)

    def ltc(tokens: list[str]) -> np.ndarray:
        vec = np.zeros(len(vocab))
        for term, tf in Counter(tokens).items():
            if term in col:
                vec[col[term]] = (1.0 + math.log(tf)) * idf[col[term]]
        return vec

    qvec = ltc(re.findall(r"[a-z0-9]+", query.lower()))
    qnorm = np.linalg.norm(qvec)
    out: dict[str, float] = {}
    if qnorm == 0:
        return out
    for title in titles:
        dvec = ltc(token_lists[title])
        dnorm = np.linalg.norm(dvec)
        if dnorm == 0:
            continue
        score = float(qvec @ dvec / (qnorm * dnorm))
        if score > 0:
            out[title] = score
    return out


DOC_WORDS = ["apple", "baker", "cobalt", "delta", "echo", "fig", "grape", "hotel"]


def random_docs(rng: random.Random, n_docs: int) -> dict[str, str]:
    docs = {}
    for i in range(n_docs):
        body = " ".join(rng.choice(DOC_WORDS) for _ in range(rng.randint(1, 30)))
        docs[f"Doc{i:03d}"] = body
    return docs
