"""Distant-supervision instance generation from corpus structure.

Every sentence of every document can become a training instance whose
targets are derived from the corpus itself, with no human labels:

* PT: the sentence's own page title.
* HL: the in-corpus hyperlink targets of the sentence, in span order.
* PTHL: the page title followed by the HL list.

Dangling links (targets outside the corpus) never become targets. HL skips
sentences without usable links; PT and PTHL emit one instance per sentence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterator

from .corpus import Corpus, Document, Sentence
from .errors import ParseError
from .ioutil import read_jsonl, write_jsonl


class Mode(str, Enum):
    PT = "PT"
    HL = "HL"
    PTHL = "PTHL"

    @classmethod
    def parse(cls, value: str) -> "Mode":
        return cls(value.upper())


@dataclass
class TrainingInstance:
    input: str
    targets: list[str]
    mode: Mode
    source_title: str

    def to_record(self) -> dict:
        return {
            "input": self.input,
            "targets": list(self.targets),
            "mode": self.mode.value,
            "source_title": self.source_title,
        }

    @classmethod
    def from_record(cls, obj: dict) -> "TrainingInstance":
        return cls(
            input=obj["input"],
            targets=list(obj["targets"]),
            mode=Mode.parse(obj["mode"]),
            source_title=obj["source_title"],
        )


def _hyperlink_targets(sentence: Sentence) -> list[str]:
    """In-corpus link targets in span order, first occurrence kept."""
    seen: set[str] = set()
    out: list[str] = []
    for link in sentence.links:
        if link.dangling or link.target in seen:
            continue
        seen.add(link.target)
        out.append(link.target)
    return out


def _instance_for(doc: Document, sentence: Sentence, mode: Mode) -> TrainingInstance | None:
    hl = _hyperlink_targets(sentence)
    if mode is Mode.PT:
        targets = [doc.title]
    elif mode is Mode.HL:
        if not hl:
            return None
        targets = hl
    else:  # PTHL: title first, self-links dropped from the tail
        targets = [doc.title] + [t for t in hl if t != doc.title]
    return TrainingInstance(input=sentence.text, targets=targets, mode=mode, source_title=doc.title)


def generate_instances(
    corpus: Corpus,
    mode: Mode,
    seed: int = 0,
    max_per_doc: int | None = None,
) -> Iterator[TrainingInstance]:
    """Yield instances in document insertion order, then sentence order.

    When max_per_doc is set, sentences are sampled uniformly without
    replacement within each document. The generator is seeded per document
    so per-document work is order-independent and the whole stream is
    deterministic for a given (corpus, mode, seed, max_per_doc).
    """
    for doc_idx, doc in enumerate(corpus):
        made = [
            (sent_idx, inst)
            for sent_idx, sent in enumerate(doc.sentences)
            if (inst := _instance_for(doc, sent, mode)) is not None
        ]
        if max_per_doc is not None and len(made) > max_per_doc:
            rng = random.Random(f"{seed}:{doc_idx}")
            made = sorted(rng.sample(made, max_per_doc), key=lambda pair: pair[0])
        for _, inst in made:
            yield inst


def write_instances(instances: Iterator[TrainingInstance], path: str | Path) -> int:
    return write_jsonl(path, (inst.to_record() for inst in instances))


def read_instances(path: str | Path) -> Iterator[TrainingInstance]:
    for lineno, obj in read_jsonl(path):
        try:
            yield TrainingInstance.from_record(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad instance record: {exc}", line=lineno) from exc


def subsample(instances_path: str | Path, out_path: str | Path, n: int, seed: int = 0) -> int:
    """Copy a uniform sample without replacement of min(n, total) lines.

    n >= total produces a permuted copy of all lines; identical seeds
    reproduce the output byte for byte.
    """
    if n < 0:
        raise ValueError("sample size must be >= 0")
    with open(instances_path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    k = min(n, len(lines))
    sample = random.Random(seed).sample(lines, k)
    with open(out_path, "w", encoding="utf-8") as fh:
        for line in sample:
            fh.write(line)
            fh.write("\n")
    return k
