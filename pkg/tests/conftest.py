import pytest

from pathlib import Path

from trieval.corpus import load_corpus
from trieval.index import build_trie, build_vocabulary

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def toy_corpus_path() -> Path:
    return FIXTURES / "toy_wikitext.jsonl"


@pytest.fixture(scope="session")
def toy_gold_path() -> Path:
    return FIXTURES / "toy_gold.jsonl"


@pytest.fixture(scope="session")
def toy_config_path() -> Path:
    return FIXTURES / "toy.toml"


@pytest.fixture(scope="session")
def toy_corpus(toy_corpus_path):
    return load_corpus(toy_corpus_path, raw=True)


@pytest.fixture(scope="session")
def toy_vocab(toy_corpus):
    return build_vocabulary(toy_corpus.titles())


@pytest.fixture(scope="session")
def toy_trie(toy_corpus, toy_vocab):
    return build_trie(toy_corpus.titles(), toy_vocab)
