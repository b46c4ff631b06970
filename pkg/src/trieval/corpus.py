"""Wikipedia-style corpus: documents, sentences, and hyperlinks.

Two ingestion paths share one in-memory model:

* corpus JSONL: one document per line, already segmented into sentences
  with character-offset links:
  ``{"title": ..., "sentences": [{"text": ..., "links": [{"target": ...,
  "anchor": ..., "start": 0, "end": 8}]}]}``
* raw wikitext JSONL: ``{"title": ..., "wikitext": ...}``; the wikitext is
  split into sentences on newlines only and ``[[target|anchor]]`` links are
  extracted per sentence.

All character offsets are Unicode scalar positions (Python string indices),
never bytes. Hyperlink targets that point outside the corpus are kept but
flagged ``dangling``; downstream supervision ignores them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import EmptyTitle, ParseError
from .ioutil import write_jsonl

_WHITESPACE_RE = re.compile(r"\s+")

# Link targets in these namespaces render media/metadata, not article links;
# the whole [[...]] construct is removed from the text.
_DROPPED_NAMESPACES = ("File:", "Image:", "Category:")


def normalize_title(raw: str) -> str:
    """Canonicalize a page title.

    Underscores become spaces, whitespace runs collapse to single spaces,
    surrounding whitespace is stripped, and the first character is
    uppercased (the Wikipedia first-letter convention). Idempotent.

    Raises EmptyTitle when nothing is left.
    """
    text = _WHITESPACE_RE.sub(" ", raw.replace("_", " ")).strip()
    if not text:
        raise EmptyTitle(f"title {raw!r} is empty after normalization")
    return text[0].upper() + text[1:]


@dataclass
class ParseStats:
    """Counters accumulated while parsing; never fatal on their own."""

    malformed: int = 0
    duplicates: int = 0
    skipped_lines: int = 0
    dangling_links: int = 0


@dataclass
class Hyperlink:
    """One link inside a sentence; span is half-open into the plain text."""

    target: str
    anchor: str
    start: int
    end: int
    dangling: bool = False

    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass
class Sentence:
    text: str
    links: list[Hyperlink] = field(default_factory=list)


@dataclass
class Document:
    title: str
    sentences: list[Sentence] = field(default_factory=list)


def extract_links(wikitext_sentence: str, stats: ParseStats | None = None) -> tuple[str, list[Hyperlink]]:
    """Strip ``[[...]]`` markup from one sentence of wikitext.

    Returns the plain text and the links with spans recomputed against it.
    ``[[T]]`` keeps T as both anchor and (normalized) target; ``[[T|A]]``
    shows A and targets T. Targets are truncated at ``#``; File:/Image:/
    Category: links are removed together with their text. An unclosed
    ``[[`` is emitted verbatim with no link, and ``stats.malformed`` is
    incremented. Nested links are not supported.
    """
    if stats is None:
        stats = ParseStats()
    parts: list[str] = []
    links: list[Hyperlink] = []
    pos = 0
    length = 0  # chars emitted so far

    def emit(text: str) -> None:
        nonlocal length
        parts.append(text)
        length += len(text)

    while True:
        open_idx = wikitext_sentence.find("[[", pos)
        if open_idx < 0:
            emit(wikitext_sentence[pos:])
            break
        emit(wikitext_sentence[pos:open_idx])
        close_idx = wikitext_sentence.find("]]", open_idx + 2)
        if close_idx < 0:
            # Unclosed markup: keep the region verbatim, no link.
            stats.malformed += 1
            emit(wikitext_sentence[open_idx:])
            break
        inner = wikitext_sentence[open_idx + 2 : close_idx]
        pos = close_idx + 2
        target_part, pipe, anchor_part = inner.partition("|")
        anchor = anchor_part if pipe else target_part
        if not anchor:
            anchor = target_part
        target_part = target_part.split("#", 1)[0]
        try:
            target = normalize_title(target_part)
        except EmptyTitle:
            # e.g. [[]] or [[#Section]]: keep the visible text, no link.
            stats.malformed += 1
            emit(anchor)
            continue
        if target.startswith(_DROPPED_NAMESPACES):
            continue
        start = length
        emit(anchor)
        links.append(Hyperlink(target=target, anchor=anchor, start=start, end=length))
    return "".join(parts), links


class Corpus:
    """Immutable-after-load collection of documents keyed by normalized title."""

    def __init__(self, documents: Iterable[Document] = (), stats: ParseStats | None = None):
        self.stats = stats or ParseStats()
        self._docs: dict[str, Document] = {}
        for doc in documents:
            self.add(doc)
        self.mark_dangling()

    def add(self, doc: Document) -> bool:
        """Insert a document; duplicates keep the first occurrence."""
        if doc.title in self._docs:
            self.stats.duplicates += 1
            return False
        self._docs[doc.title] = doc
        return True

    def mark_dangling(self) -> None:
        """Flag links whose target is not a corpus member."""
        self.stats.dangling_links = 0
        for doc in self._docs.values():
            for sent in doc.sentences:
                for link in sent.links:
                    link.dangling = link.target not in self._docs
                    if link.dangling:
                        self.stats.dangling_links += 1

    def __len__(self) -> int:
        return len(self._docs)

    def __iter__(self) -> Iterator[Document]:
        return iter(self._docs.values())

    def __contains__(self, title: str) -> bool:
        try:
            return normalize_title(title) in self._docs
        except EmptyTitle:
            return False

    def get(self, title: str) -> Document:
        return self._docs[normalize_title(title)]

    def titles(self) -> list[str]:
        """Titles in insertion order."""
        return list(self._docs.keys())

    def title_set(self) -> frozenset[str]:
        return frozenset(self._docs.keys())

    def sentence_count(self) -> int:
        return sum(len(doc.sentences) for doc in self._docs.values())


def _document_from_record(obj: dict, lineno: int) -> Document:
    try:
        title = normalize_title(obj["title"])
        sentences = []
        for sent in obj["sentences"]:
            links = [
                Hyperlink(
                    target=normalize_title(lk["target"]),
                    anchor=lk["anchor"],
                    start=int(lk["start"]),
                    end=int(lk["end"]),
                )
                for lk in sent.get("links", [])
            ]
            links.sort(key=lambda lk: lk.start)
            text = sent["text"]
            last_end = 0
            for lk in links:
                if not (0 <= lk.start < lk.end <= len(text)):
                    raise ParseError(f"link span {lk.span()} out of range", line=lineno)
                if text[lk.start : lk.end] != lk.anchor:
                    raise ParseError(f"anchor mismatch at {lk.span()}", line=lineno)
                if lk.start < last_end:
                    raise ParseError(f"overlapping link spans at {lk.span()}", line=lineno)
                last_end = lk.end
            sentences.append(Sentence(text=text, links=links))
        return Document(title=title, sentences=sentences)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, EmptyTitle) as exc:
        raise ParseError(f"bad document record: {exc}", line=lineno) from exc


def _document_from_wikitext(obj: dict, lineno: int, stats: ParseStats) -> Document:
    try:
        title = normalize_title(obj["title"])
        raw = obj["wikitext"]
    except (KeyError, TypeError, EmptyTitle) as exc:
        raise ParseError(f"bad wikitext record: {exc}", line=lineno) from exc
    sentences = []
    for line in raw.split("\n"):
        if not line.strip():
            continue
        text, links = extract_links(line, stats)
        sentences.append(Sentence(text=text, links=links))
    return Document(title=title, sentences=sentences)


def load_corpus(path: str | Path, raw: bool = False, strict: bool = True) -> Corpus:
    """Load a corpus from JSONL; ``raw=True`` selects the wikitext schema.

    Duplicate titles keep the first occurrence (counted). With
    ``strict=False`` malformed lines are skipped and counted instead of
    raising ParseError.
    """
    stats = ParseStats()
    documents: list[Document] = []
    for lineno, obj in _iter_records(path, strict, stats):
        try:
            if raw:
                documents.append(_document_from_wikitext(obj, lineno, stats))
            else:
                documents.append(_document_from_record(obj, lineno))
        except ParseError:
            if strict:
                raise
            stats.skipped_lines += 1
    return Corpus(documents, stats=stats)


def _iter_records(path: str | Path, strict: bool, stats: ParseStats):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                if strict:
                    raise ParseError(str(exc), line=lineno) from exc
                stats.skipped_lines += 1


def save_corpus(corpus: Corpus, path: str | Path) -> int:
    """Serialize to corpus JSONL; load_corpus(save_corpus(c)) is the identity."""
    return write_jsonl(path, (_document_to_record(doc) for doc in corpus))


def _document_to_record(doc: Document) -> dict:
    return {
        "title": doc.title,
        "sentences": [
            {
                "text": sent.text,
                "links": [
                    {"target": lk.target, "anchor": lk.anchor, "start": lk.start, "end": lk.end}
                    for lk in sent.links
                ],
            }
            for sent in doc.sentences
        ],
    }
