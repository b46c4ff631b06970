"""Title tokenization and the prefix trie that constrains decoding.

The tokenizer is a greedy longest-match subword tokenizer over an explicit
vocabulary. Text is first segmented at class boundaries (alphanumeric runs,
whitespace runs, punctuation runs); matching never crosses a segment.
Whitespace is rewritten to the visible marker ``▁`` before matching so that
spaces are ordinary vocabulary tokens, and out-of-vocabulary fragments fall
back to UNK one character at a time.

A vocabulary induced from corpus titles (every title word, every single
character, and ``▁``) tokenizes all titles without UNK and round-trips them
exactly. An externally supplied vocabulary file reproduces any fixed
subword scheme; it must contain ``▁`` if any title contains spaces.

The trie stores the tokenization of every title; ``allowed_next`` yields
the legal continuations of a prefix, plus the pseudo-token END_TITLE
(id -1, never part of a vocabulary) at terminal nodes.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import InvalidPrefix, ParseError, UnkInTitle
from .ioutil import sha256_text

PAD_ID = 0
EOS_ID = 1
SEP_ID = 2
UNK_ID = 3
RESERVED_TOKENS = ("<pad>", "<eos>", "<sep>", "<unk>")

# Pseudo-token signalled by the trie when a prefix spells a complete title.
# Negative on purpose: it can never collide with a vocabulary id.
END_TITLE = -1

SPACE_MARKER = "▁"  # ▁

_TRIE_MAGIC = b"DRTR"
_TRIE_VERSION = 1
_NO_TITLE = 0xFFFFFFFF


def _char_class(ch: str) -> int:
    if ch.isalnum():
        return 0
    if ch.isspace():
        return 1
    return 2


def split_segments(text: str) -> Iterator[str]:
    """Maximal runs of one character class (alnum / whitespace / other)."""
    start = 0
    for i in range(1, len(text)):
        if _char_class(text[i]) != _char_class(text[start]):
            yield text[start:i]
            start = i
    if text:
        yield text[start:]


class Vocabulary:
    """Bijection between token strings and contiguous ids; ids 0-3 reserved."""

    def __init__(self, tokens: Sequence[str]):
        if tuple(tokens[:4]) != RESERVED_TOKENS:
            raise ValueError(f"first four tokens must be {RESERVED_TOKENS}")
        self.tokens = list(tokens)
        self._ids: dict[str, int] = {}
        for i, tok in enumerate(self.tokens):
            if tok in self._ids:
                raise ValueError(f"duplicate token {tok!r}")
            self._ids[tok] = i
        # Reserved tokens are never produced by matching text.
        self._match_ids = {t: i for t, i in self._ids.items() if i >= 4}
        self._max_len = max((len(t) for t in self._match_ids), default=0)

    def __len__(self) -> int:
        return len(self.tokens)

    def id_of(self, token: str) -> int:
        return self._ids[token]

    def token(self, token_id: int) -> str:
        return self.tokens[token_id]

    @property
    def sha256(self) -> str:
        """Hash of the serialized vocabulary; doubles as the wire handshake hash."""
        return sha256_text("\n".join(self.tokens) + "\n")

    def encode(self, text: str) -> list[int]:
        ids: list[int] = []
        for seg in split_segments(text):
            if seg[0].isspace():
                seg = SPACE_MARKER * len(seg)
            pos = 0
            while pos < len(seg):
                tid = None
                for length in range(min(self._max_len, len(seg) - pos), 0, -1):
                    tid = self._match_ids.get(seg[pos : pos + length])
                    if tid is not None:
                        pos += length
                        break
                if tid is None:
                    ids.append(UNK_ID)
                    pos += 1
                else:
                    ids.append(tid)
        return ids

    def decode(self, ids: Iterable[int]) -> str:
        parts = [self.tokens[i] for i in ids if i >= 4]
        return "".join(parts).replace(SPACE_MARKER, " ")


def tokenize(text: str, vocab: Vocabulary) -> list[int]:
    """Greedy longest-match token ids for text; deterministic, UNK on OOV."""
    return vocab.encode(text)


def detokenize(ids: Iterable[int], vocab: Vocabulary) -> str:
    """Inverse of tokenize for UNK-free sequences; reserved ids are dropped."""
    return vocab.decode(ids)


def build_vocabulary(titles: Iterable[str]) -> Vocabulary:
    """Induce a vocabulary covering every title: words, single chars, ▁."""
    seen: set[str] = set()
    for title in titles:
        for seg in split_segments(title):
            if seg[0].isspace():
                seen.add(SPACE_MARKER)
                continue
            if seg[0].isalnum():
                seen.add(seg)
            seen.update(seg)
    seen.discard("")
    return Vocabulary(list(RESERVED_TOKENS) + sorted(seen))


def save_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    """One token per line; the line number is the id."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(vocab.tokens) + "\n")


def load_vocabulary(path: str | Path) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split("\n")
    if tokens and tokens[-1] == "":
        tokens.pop()
    if len(tokens) < 4:
        raise ParseError(f"vocabulary file {path} has fewer than 4 lines")
    try:
        return Vocabulary(tokens)
    except ValueError as exc:
        raise ParseError(f"bad vocabulary file {path}: {exc}") from exc


class TrieNode:
    __slots__ = ("children", "terminal", "title_id")

    def __init__(self):
        self.children: dict[int, TrieNode] = {}
        self.terminal = False
        self.title_id = _NO_TITLE


class TitleTrie:
    """Prefix trie over tokenized titles; immutable once built."""

    def __init__(self, vocab_sha256: str = ""):
        self.root = TrieNode()
        self.titles: list[str] = []
        self.vocab_sha256 = vocab_sha256

    def __len__(self) -> int:
        return len(self.titles)

    def _insert(self, token_ids: Sequence[int], title: str) -> None:
        node = self.root
        for tid in token_ids:
            node = node.children.setdefault(tid, TrieNode())
        if node.terminal:
            raise ValueError(f"duplicate title {title!r}")
        node.terminal = True
        node.title_id = len(self.titles)
        self.titles.append(title)

    def node_at(self, prefix: Sequence[int]) -> TrieNode:
        node = self.root
        for tid in prefix:
            child = node.children.get(tid)
            if child is None:
                raise InvalidPrefix(f"token id {tid} not reachable at {list(prefix)!r}")
            node = child
        return node

    def allowed_next(self, prefix: Sequence[int]) -> set[int]:
        """Token ids that extend prefix, plus END_TITLE at terminal nodes."""
        node = self.node_at(prefix)
        allowed = set(node.children)
        if node.terminal:
            allowed.add(END_TITLE)
        return allowed

    def contains_tokens(self, token_ids: Sequence[int]) -> bool:
        node = self.root
        for tid in token_ids:
            node = node.children.get(tid)
            if node is None:
                return False
        return node.terminal

    def title_of(self, node: TrieNode) -> str:
        return self.titles[node.title_id]

    def iter_nodes(self) -> Iterator[tuple[tuple[int, ...], TrieNode]]:
        """Depth-first (prefix, node) pairs, children in sorted id order."""
        stack: list[tuple[tuple[int, ...], TrieNode]] = [((), self.root)]
        while stack:
            prefix, node = stack.pop()
            yield prefix, node
            for tid in sorted(node.children, reverse=True):
                stack.append((prefix + (tid,), node.children[tid]))


def allowed_next(trie: TitleTrie, prefix: Sequence[int]) -> set[int]:
    return trie.allowed_next(prefix)


def build_trie(titles: Sequence[str], vocab: Vocabulary) -> TitleTrie:
    """Insert the tokenization of every title; single pass, deterministic.

    Raises UnkInTitle when a title is not fully covered by the vocabulary.
    """
    trie = TitleTrie(vocab_sha256=vocab.sha256)
    for title in titles:
        ids = vocab.encode(title)
        if UNK_ID in ids:
            raise UnkInTitle(f"title {title!r} tokenizes with UNK")
        trie._insert(ids, title)
    return trie


def save_trie(trie: TitleTrie, path: str | Path) -> None:
    """DRTR v1: magic, version, node count, titles, flat preorder node array.

    Children are stored as (token id, child node index) pairs in sorted
    token-id order, so identical input order yields identical bytes.
    See docs/formats.md for the exact layout.
    """
    order: list[tuple[TrieNode, list[tuple[int, int]]]] = []
    index: dict[int, int] = {}
    _assign_iterative(trie.root, order, index)

    blob = bytearray()
    blob += _TRIE_MAGIC
    blob += struct.pack("<HI", _TRIE_VERSION, len(order))
    blob += bytes.fromhex(trie.vocab_sha256) if trie.vocab_sha256 else b"\x00" * 32
    blob += struct.pack("<I", len(trie.titles))
    for title in trie.titles:
        encoded = title.encode("utf-8")
        blob += struct.pack("<I", len(encoded))
        blob += encoded
    for node, children in order:
        flags = 1 if node.terminal else 0
        blob += struct.pack("<BII", flags, node.title_id, len(children))
        for tid, child_idx in children:
            blob += struct.pack("<II", tid, child_idx)
    with open(path, "wb") as fh:
        fh.write(bytes(blob))


def _assign_iterative(root: TrieNode, order, index) -> None:
    # Preorder without recursion; titles can be deep token chains.
    stack: list[TrieNode] = [root]
    while stack:
        node = stack.pop()
        idx = len(order)
        index[id(node)] = idx
        order.append((node, []))
        for tid in sorted(node.children, reverse=True):
            stack.append(node.children[tid])
    for node, entry in order:
        for tid in sorted(node.children):
            entry.append((tid, index[id(node.children[tid])]))


def load_trie(path: str | Path) -> TitleTrie:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != _TRIE_MAGIC:
        raise ParseError(f"{path}: not a DRTR trie file")
    version, node_count = struct.unpack_from("<HI", data, 4)
    if version != _TRIE_VERSION:
        raise ParseError(f"{path}: unsupported DRTR version {version}")
    pos = 10
    vocab_hash = data[pos : pos + 32].hex()
    pos += 32
    (title_count,) = struct.unpack_from("<I", data, pos)
    pos += 4
    titles = []
    for _ in range(title_count):
        (length,) = struct.unpack_from("<I", data, pos)
        pos += 4
        titles.append(data[pos : pos + length].decode("utf-8"))
        pos += length
    nodes = [TrieNode() for _ in range(node_count)]
    for node in nodes:
        flags, title_id, child_count = struct.unpack_from("<BII", data, pos)
        pos += 9
        node.terminal = bool(flags & 1)
        node.title_id = title_id
        for _ in range(child_count):
            tid, child_idx = struct.unpack_from("<II", data, pos)
            pos += 8
            node.children[tid] = nodes[child_idx]
    if pos != len(data):
        raise ParseError(f"{path}: {len(data) - pos} trailing bytes")
    trie = TitleTrie(vocab_sha256=vocab_hash if vocab_hash != "0" * 64 else "")
    if nodes:
        trie.root = nodes[0]
    trie.titles = titles
    return trie
