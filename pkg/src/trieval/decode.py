"""Constrained beam search over a pluggable sequence scorer.

A hypothesis decodes one or more titles as a single token sequence. Inside
a title the trie dictates the legal next tokens; when the path spells a
complete title the trie offers the pseudo-token END_TITLE. Consuming
END_TITLE records the title, after which the scorer chooses between SEP
(start another title) and EOS (stop). Every completed title is therefore a
corpus member by construction.

Scorers only ever see (input text, decoded prefix, allowed token ids) and
return one raw score per allowed id; ``score_step`` turns raw scores into
log-probabilities that sum to one over the allowed set. The scorer never
gets a chance to put mass outside the constraint set.

``beam_search_unconstrained`` is the ablation twin: the whole vocabulary is
allowed at every step, titles end at SEP/EOS, and nothing guarantees the
decoded strings exist in the corpus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import EmptyTrie, ScorerProtocolError
from .index import END_TITLE, EOS_ID, SEP_ID, SPACE_MARKER, TitleTrie, Vocabulary
from .ioutil import read_jsonl, write_jsonl

POSITION_EPSILON = 1e-6  # rank penalty for later titles within one hypothesis


class Scorer:
    """Base sequence scorer: raw (unnormalized) scores over allowed ids.

    ``shareable`` declares whether one instance may serve several worker
    threads at once; connection-bound scorers (the external wire protocol)
    say no and the runner builds one per worker.
    """

    shareable = True

    def raw_scores(
        self, input_text: str, prefix: Sequence[int], allowed: Sequence[int]
    ) -> Mapping[int, float]:
        raise NotImplementedError

    def close(self) -> None:
        pass


class UniformScorer(Scorer):
    """Equal mass on every allowed token; the degenerate baseline."""

    def raw_scores(self, input_text, prefix, allowed):
        return {tid: 0.0 for tid in allowed}


def _trigrams(text: str) -> set[str]:
    return {text[i : i + 3] for i in range(len(text) - 2)}


def lexical_score(query: str, token: str, context: str = "") -> float:
    """Surface-overlap score of one candidate token against the query.

    Character-3-gram overlap between token and query, plus 0.5 when the
    in-progress word (context tail + token) is a prefix of some query word.
    Case-insensitive; an empty query scores every token 0.
    """
    q = query.casefold()
    score = float(len(_trigrams(token.casefold()) & _trigrams(q)))
    tail = (context + token).casefold()
    if tail and not tail[-1].isspace():
        fragment = tail.split()[-1]
        if any(word.startswith(fragment) for word in q.split()):
            score += 0.5
    return score


class LexicalScorer(Scorer):
    """Desk-scale stand-in scorer: no model, just query/token surface overlap.

    Scores equal ``lexical_score`` exactly; token trigram sets and query
    features are cached because unconstrained decoding scores the entire
    vocabulary at every step.
    """

    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab
        self._token_cache: dict[int, tuple[str, frozenset[str]]] = {}
        self._query_cache: dict[str, tuple[frozenset[str], tuple[str, ...]]] = {}

    def _context(self, prefix: Sequence[int]) -> str:
        # Text of the title currently being decoded: ids after the last
        # SEP/END_TITLE boundary.
        current: list[int] = []
        for tid in reversed(prefix):
            if tid in (SEP_ID, END_TITLE, EOS_ID):
                break
            current.append(tid)
        return self.vocab.decode(reversed(current))

    def _query_features(self, query: str) -> tuple[frozenset[str], tuple[str, ...]]:
        feats = self._query_cache.get(query)
        if feats is None:
            q = query.casefold()
            feats = (frozenset(_trigrams(q)), tuple(q.split()))
            if len(self._query_cache) > 1024:
                self._query_cache.clear()
            self._query_cache[query] = feats
        return feats

    def _token_features(self, tid: int) -> tuple[str, frozenset[str]]:
        feats = self._token_cache.get(tid)
        if feats is None:
            token = self.vocab.token(tid).replace(SPACE_MARKER, " ")
            feats = (token, frozenset(_trigrams(token.casefold())))
            self._token_cache[tid] = feats
        return feats

    def raw_scores(self, input_text, prefix, allowed):
        query_grams, query_words = self._query_features(input_text)
        context = self._context(prefix)
        out = {}
        for tid in allowed:
            if tid < 4:  # reserved and END_TITLE carry no surface form
                out[tid] = 0.0
                continue
            token, token_grams = self._token_features(tid)
            score = float(len(token_grams & query_grams))
            tail = (context + token).casefold()
            if tail and not tail[-1].isspace():
                fragment = tail.split()[-1]
                if any(word.startswith(fragment) for word in query_words):
                    score += 0.5
            out[tid] = score
        return out


class OracleScorer(Scorer):
    """Puts almost all mass on a known gold title sequence per query.

    Used to exercise the pipeline end to end: with the gold path scored at
    probability ~1, retrieval quality is limited only by the machinery.
    Queries without a gold entry fall back to uniform.
    """

    def __init__(self, vocab: Vocabulary, gold: Mapping[str, Sequence[str]], boost: float = 30.0):
        self.vocab = vocab
        self.boost = boost
        self._paths: dict[str, tuple[int, ...]] = {}
        for query, titles in gold.items():
            seq: list[int] = []
            for i, title in enumerate(titles):
                seq.extend(vocab.encode(title))
                seq.append(END_TITLE)
                seq.append(SEP_ID if i < len(titles) - 1 else EOS_ID)
            self._paths[query] = tuple(seq)

    def raw_scores(self, input_text, prefix, allowed):
        path = self._paths.get(input_text)
        prefix = tuple(prefix)
        if path is None or len(prefix) >= len(path) or path[: len(prefix)] != prefix:
            return {tid: 0.0 for tid in allowed}
        gold_next = path[len(prefix)]
        return {tid: (self.boost if tid == gold_next else 0.0) for tid in allowed}


def score_step(
    scorer: Scorer, input_text: str, prefix: Sequence[int], allowed: Iterable[int]
) -> dict[int, float]:
    """Normalized log-probabilities over exactly the allowed ids.

    Whatever the scorer returns is restricted to ``allowed`` and shifted so
    logsumexp over the set is 0; missing or non-finite entries are protocol
    errors.
    """
    allowed = sorted(set(allowed))
    if not allowed:
        raise ValueError("allowed set must be non-empty")
    raw = scorer.raw_scores(input_text, tuple(prefix), tuple(allowed))
    missing = [tid for tid in allowed if tid not in raw]
    if missing:
        raise ScorerProtocolError(f"scorer returned no score for ids {missing}")
    vals = {tid: float(raw[tid]) for tid in allowed}
    if any(not math.isfinite(v) for v in vals.values()):
        raise ScorerProtocolError("scorer returned non-finite scores")
    top = max(vals.values())
    lse = top + math.log(sum(math.exp(v - top) for v in vals.values()))
    return {tid: v - lse for tid, v in vals.items()}


@dataclass(frozen=True)
class Hypothesis:
    """One beam state: decoded ids, their summed log-probability, and the
    titles completed along the way."""

    tokens: tuple[int, ...]
    logscore: float
    completed: tuple[str, ...]
    finished: bool

    def normalized_score(self, length_norm: bool = True) -> float:
        if length_norm:
            return self.logscore / max(len(self.tokens), 1)
        return self.logscore


class _Beam:
    __slots__ = ("tokens", "logscore", "completed", "finished", "node", "in_title", "current")

    def __init__(self, tokens, logscore, completed, finished, node, in_title, current=()):
        self.tokens = tokens
        self.logscore = logscore
        self.completed = completed
        self.finished = finished
        self.node = node
        self.in_title = in_title
        self.current = current  # unconstrained mode: ids of the title in progress

    def norm(self, length_norm: bool) -> float:
        if length_norm:
            return self.logscore / max(len(self.tokens), 1)
        return self.logscore

    def to_hypothesis(self) -> Hypothesis:
        return Hypothesis(self.tokens, self.logscore, self.completed, self.finished)


def _sort_key(item: _Beam, length_norm: bool):
    # Score descending; ties broken on decoded content so results are
    # reproducible across platforms.
    return (-item.norm(length_norm), item.completed, item.tokens)


def beam_search(
    scorer: Scorer,
    trie: TitleTrie,
    input_text: str,
    beam: int = 10,
    max_titles: int = 5,
    max_len: int = 64,
    length_norm: bool = True,
) -> list[Hypothesis]:
    """Trie-constrained beam search; returns up to ``beam`` hypotheses.

    Hypotheses are pruned by length-normalized score (raw score with
    ``length_norm=False``) and returned best first. Every returned
    hypothesis is finished or was cut off at ``max_len`` tokens; every
    completed title is a trie member.
    """
    if beam < 1:
        raise ValueError("beam must be >= 1")
    if max_titles < 1:
        raise ValueError("max_titles must be >= 1")
    if len(trie) == 0:
        raise EmptyTrie("cannot decode against an empty trie")

    items = [_Beam((), 0.0, (), False, trie.root, True)]
    while True:
        live = [it for it in items if not it.finished and len(it.tokens) < max_len]
        if not live:
            break
        candidates = [it for it in items if it.finished or len(it.tokens) >= max_len]
        for it in live:
            if it.in_title:
                allowed = set(it.node.children)
                if it.node.terminal:
                    allowed.add(END_TITLE)
            elif len(it.completed) < max_titles:
                allowed = {SEP_ID, EOS_ID}
            else:
                allowed = {EOS_ID}
            if not allowed:  # unreachable in a well-formed trie
                continue
            logprobs = score_step(scorer, input_text, it.tokens, allowed)
            for tid in sorted(logprobs):
                tokens = it.tokens + (tid,)
                score = it.logscore + logprobs[tid]
                if tid == END_TITLE:
                    title = trie.title_of(it.node)
                    candidates.append(
                        _Beam(tokens, score, it.completed + (title,), False, it.node, False)
                    )
                elif tid == SEP_ID:
                    candidates.append(_Beam(tokens, score, it.completed, False, trie.root, True))
                elif tid == EOS_ID:
                    candidates.append(_Beam(tokens, score, it.completed, True, it.node, False))
                else:
                    candidates.append(
                        _Beam(tokens, score, it.completed, False, it.node.children[tid], True)
                    )
        candidates.sort(key=lambda it: _sort_key(it, length_norm))
        items = candidates[:beam]
    items.sort(key=lambda it: _sort_key(it, length_norm))
    return [it.to_hypothesis() for it in items]


def beam_search_unconstrained(
    scorer: Scorer,
    vocab: Vocabulary,
    input_text: str,
    beam: int = 10,
    max_titles: int = 5,
    max_len: int = 64,
    length_norm: bool = True,
) -> list[Hypothesis]:
    """Free decoding over the whole vocabulary; titles end at SEP/EOS.

    Completed strings are whatever the scorer liked; they may not exist in
    any corpus. Callers filter invalid titles during aggregation.
    """
    if beam < 1:
        raise ValueError("beam must be >= 1")
    if max_titles < 1:
        raise ValueError("max_titles must be >= 1")
    text_ids = tuple(range(4, len(vocab)))
    if not text_ids:
        raise EmptyTrie("vocabulary has no text tokens")

    items = [_Beam((), 0.0, (), False, None, True)]
    while True:
        live = [it for it in items if not it.finished and len(it.tokens) < max_len]
        if not live:
            break
        candidates = [it for it in items if it.finished or len(it.tokens) >= max_len]
        for it in live:
            allowed = list(text_ids)
            if it.current:
                allowed.append(EOS_ID)
                if len(it.completed) + 1 < max_titles:
                    allowed.append(SEP_ID)
            logprobs = score_step(scorer, input_text, it.tokens, allowed)
            for tid in sorted(logprobs):
                tokens = it.tokens + (tid,)
                score = it.logscore + logprobs[tid]
                if tid in (SEP_ID, EOS_ID):
                    completed = it.completed + (vocab.decode(it.current),)
                    finished = tid == EOS_ID
                    candidates.append(_Beam(tokens, score, completed, finished, None, True, ()))
                else:
                    candidates.append(
                        _Beam(tokens, score, it.completed, False, None, True, it.current + (tid,))
                    )
        candidates.sort(key=lambda it: _sort_key(it, length_norm))
        items = candidates[:beam]
    items.sort(key=lambda it: _sort_key(it, length_norm))
    return [it.to_hypothesis() for it in items]


@dataclass
class RankedResult:
    """Per-query document ranking, best first."""

    query_id: str
    ranking: list[tuple[str, float]]

    def titles(self) -> list[str]:
        return [title for title, _ in self.ranking]

    def to_record(self) -> dict:
        return {
            "id": self.query_id,
            "ranked": [{"title": t, "score": s} for t, s in self.ranking],
        }

    @classmethod
    def from_record(cls, obj: dict) -> "RankedResult":
        return cls(
            query_id=str(obj["id"]),
            ranking=[(r["title"], float(r["score"])) for r in obj["ranked"]],
        )


def aggregate(
    hypotheses: Sequence[Hypothesis],
    query_id: str = "",
    length_norm: bool = True,
    valid_titles: frozenset[str] | set[str] | None = None,
) -> RankedResult:
    """Merge beam hypotheses into one ranking.

    A title scores the max over hypotheses containing it of the hypothesis
    score minus a tiny penalty per position, so titles decoded earlier in a
    sequence outrank later ones from the same hypothesis without drowning
    real score differences across beams. ``valid_titles`` drops anything
    outside the corpus (the unconstrained ablation needs this).
    """
    scores: dict[str, float] = {}
    for hyp in hypotheses:
        base = hyp.normalized_score(length_norm)
        for pos, title in enumerate(hyp.completed):
            if valid_titles is not None and title not in valid_titles:
                continue
            value = base - POSITION_EPSILON * pos
            if title not in scores or value > scores[title]:
                scores[title] = value
    ranking = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return RankedResult(query_id=query_id, ranking=ranking)


def write_results(results: Iterable[RankedResult], path) -> int:
    return write_jsonl(path, (res.to_record() for res in results))


def read_results(path) -> list[RankedResult]:
    return [RankedResult.from_record(obj) for _, obj in read_jsonl(path)]
