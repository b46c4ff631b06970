"""Small shared I/O helpers: JSONL streaming, canonical JSON, hashing."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Iterable, Iterator

from .errors import ParseError


def read_jsonl(path: str | Path) -> Iterator[tuple[int, Any]]:
    """Yield (1-based line number, parsed object) for every non-blank line.

    Raises ParseError with the offending line number on invalid JSON.
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc), line=lineno) from exc


def write_jsonl(path: str | Path, records: Iterable[Any]) -> int:
    """Write records as one JSON object per line; returns the record count."""
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(dumps_compact(rec))
            fh.write("\n")
            count += 1
    return count


def dumps_compact(obj: Any) -> str:
    """Deterministic single-line JSON (no key sorting; caller fixes order)."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON with sorted keys, for hashing and binary payloads."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), sort_keys=True)


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_text(text: str) -> str:
    return sha256_bytes(text.encode("utf-8"))


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()
