"""Trie-constrained autoregressive document retrieval toolkit.

Generates distant-supervision training instances (page-title / hyperlink /
combined targets) from a Wikipedia-style corpus, retrieves document titles
with trie-constrained beam search over a pluggable sequence scorer, runs
BM25 / TF-IDF sparse baselines over the same corpus, and evaluates rankings
with R-Precision and Recall@k under multi-answer-set max semantics.
"""

__version__ = "0.1.0"

from .baselines import (
    bm25_search,
    build_inverted_index,
    load_index,
    save_index,
    tfidf_search,
)
from .corpus import Corpus, load_corpus, normalize_title, save_corpus
from .decode import (
    LexicalScorer,
    OracleScorer,
    RankedResult,
    Scorer,
    UniformScorer,
    aggregate,
    beam_search,
    beam_search_unconstrained,
    score_step,
)
from .errors import TrievalError
from .evaluation import evaluate_rankings, load_gold, r_precision, recall_at_k
from .external import ExternalScorer
from .index import (
    TitleTrie,
    Vocabulary,
    build_trie,
    build_vocabulary,
    load_trie,
    load_vocabulary,
    save_trie,
    save_vocabulary,
    tokenize,
)
from .supervision import Mode, generate_instances, subsample, write_instances

__all__ = [
    "Corpus",
    "ExternalScorer",
    "LexicalScorer",
    "Mode",
    "OracleScorer",
    "RankedResult",
    "Scorer",
    "TitleTrie",
    "TrievalError",
    "UniformScorer",
    "Vocabulary",
    "__version__",
    "aggregate",
    "beam_search",
    "beam_search_unconstrained",
    "bm25_search",
    "build_inverted_index",
    "build_trie",
    "build_vocabulary",
    "evaluate_rankings",
    "generate_instances",
    "load_corpus",
    "load_gold",
    "load_index",
    "load_trie",
    "load_vocabulary",
    "normalize_title",
    "r_precision",
    "recall_at_k",
    "save_corpus",
    "save_index",
    "save_trie",
    "save_vocabulary",
    "score_step",
    "subsample",
    "tfidf_search",
    "tokenize",
    "write_instances",
]
