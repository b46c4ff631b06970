"""Exception hierarchy shared across the toolkit.

Every data-level failure raises a subclass of TrievalError so the CLI can
map them uniformly to exit code 1; usage errors are left to argparse
(exit code 2).
"""

from __future__ import annotations


class TrievalError(Exception):
    """Base class for all toolkit errors."""


class EmptyTitle(TrievalError):
    """Title normalization produced an empty string."""


class ParseError(TrievalError):
    """An input file line could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnkInTitle(TrievalError):
    """A title tokenized with UNK and cannot be placed in the trie."""


class InvalidPrefix(TrievalError):
    """A token-id prefix is not a path in the trie."""


class EmptyTrie(TrievalError):
    """The trie contains no titles."""


class EmptyCorpus(TrievalError):
    """An operation requires a non-empty corpus."""


class ScorerTimeout(TrievalError):
    """The external scorer did not answer within the timeout."""


class ScorerProtocolError(TrievalError):
    """The external scorer violated the wire protocol."""


class EmptyGold(TrievalError):
    """A gold record has no answer sets, or an answer set is empty."""


class InvalidRanking(TrievalError):
    """A ranking violates its contract (e.g. duplicate titles)."""


class IdMismatch(TrievalError):
    """Results are missing more gold query ids than the allowed threshold."""
