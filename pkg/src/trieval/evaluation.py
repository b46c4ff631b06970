"""Retrieval metrics: R-Precision and Recall@k with answer-set max semantics.

A gold record may carry several alternative answer sets (multi-hop tasks
accept more than one evidence combination); each metric is computed per set
and the query's score is the max over its sets. Averaging across queries is
macro (every query weighs the same).

Rankings with duplicate titles are rejected rather than de-duplicated;
duplicates always indicate an aggregation bug upstream and hiding them
would corrupt the comparison.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import normalize_title
from .decode import RankedResult, read_results
from .errors import EmptyGold, EmptyTitle, IdMismatch, InvalidRanking, ParseError
from .ioutil import read_jsonl

log = logging.getLogger("trieval")


@dataclass
class GoldRecord:
    query_id: str
    query: str
    answer_sets: list[list[str]]

    @classmethod
    def from_record(cls, obj: dict, lineno: int) -> "GoldRecord":
        try:
            raw_sets = obj["answer_sets"]
            sets = [[normalize_title(t) for t in s] for s in raw_sets]
            return cls(query_id=str(obj["id"]), query=obj["query"], answer_sets=sets)
        except EmptyTitle as exc:
            raise EmptyGold(f"line {lineno}: empty title in answer set") from exc
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad gold record: {exc}", line=lineno) from exc


def load_gold(path: str | Path) -> tuple[list[GoldRecord], int]:
    """Gold records plus the count of excluded no-evidence queries.

    Records whose answer_sets list is empty (e.g. claims with no evidence)
    are excluded and counted, not errors. An empty set inside a non-empty
    list is an error, and so is a file with no usable records.
    """
    records: list[GoldRecord] = []
    excluded = 0
    for lineno, obj in read_jsonl(path):
        rec = GoldRecord.from_record(obj, lineno)
        if not rec.answer_sets:
            excluded += 1
            continue
        if any(not s for s in rec.answer_sets):
            raise EmptyGold(f"line {lineno}: answer set is empty")
        records.append(rec)
    if not records:
        raise EmptyGold(f"{path}: no usable gold records")
    return records, excluded


def _check_answer_sets(answer_sets: Sequence[Sequence[str]]) -> list[frozenset[str]]:
    if not answer_sets:
        raise EmptyGold("no answer sets given")
    sets = [frozenset(s) for s in answer_sets]
    if any(not s for s in sets):
        raise EmptyGold("answer set is empty")
    return sets


def _check_ranking(ranked: Sequence[str]) -> None:
    if len(set(ranked)) != len(ranked):
        raise InvalidRanking("ranking contains duplicate titles")


def r_precision(ranked: Sequence[str], answer_sets: Sequence[Sequence[str]]) -> float:
    """Precision of the top-R titles where R = |answer set|; max over sets."""
    sets = _check_answer_sets(answer_sets)
    _check_ranking(ranked)
    best = 0.0
    for s in sets:
        hits = len(s.intersection(ranked[: len(s)]))
        best = max(best, hits / len(s))
    return best


def recall_at_k(ranked: Sequence[str], answer_sets: Sequence[Sequence[str]], k: int) -> float:
    """Fraction of one answer set found in the top k; max over sets."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sets = _check_answer_sets(answer_sets)
    _check_ranking(ranked)
    best = 0.0
    for s in sets:
        hits = len(s.intersection(ranked[:k]))
        best = max(best, hits / len(s))
    return best


@dataclass
class PerQuery:
    query_id: str
    r_precision: float
    recall: dict[int, float]

    def to_dict(self) -> dict:
        return {
            "id": self.query_id,
            "r_precision": self.r_precision,
            "recall": {str(k): v for k, v in sorted(self.recall.items())},
        }


@dataclass
class MetricsReport:
    """Macro-averaged metrics plus the per-query values they average."""

    query_count: int
    ks: list[int]
    r_precision: float
    recall: dict[int, float]
    per_query: list[PerQuery] = field(default_factory=list)
    per_k_counts: dict[int, int] = field(default_factory=dict)
    excluded_queries: int = 0
    missing_results: int = 0
    extra_results: int = 0

    def to_dict(self) -> dict:
        return {
            "query_count": self.query_count,
            "ks": list(self.ks),
            "r_precision": self.r_precision,
            "recall": {str(k): v for k, v in sorted(self.recall.items())},
            "per_k_counts": {str(k): v for k, v in sorted(self.per_k_counts.items())},
            "excluded_queries": self.excluded_queries,
            "missing_results": self.missing_results,
            "extra_results": self.extra_results,
            "per_query": [pq.to_dict() for pq in self.per_query],
        }


def evaluate_rankings(
    results: Iterable[RankedResult],
    gold: Sequence[GoldRecord],
    ks: Sequence[int] = (1, 5, 10),
    allow_missing: int = 0,
) -> MetricsReport:
    """Score results against gold records; macro averages over queries.

    Gold ids absent from the results count as empty rankings (warned) up to
    ``allow_missing`` of them; more is an IdMismatch. Result ids absent
    from the gold are ignored with a warning.
    """
    if not gold:
        raise EmptyGold("no gold records to evaluate against")
    ks = sorted(set(int(k) for k in ks))
    if not ks or ks[0] < 1:
        raise ValueError("every k must be >= 1")

    by_id: dict[str, RankedResult] = {}
    for res in results:
        if res.query_id in by_id:
            raise InvalidRanking(f"duplicate result id {res.query_id!r}")
        by_id[res.query_id] = res

    gold_ids = {g.query_id for g in gold}
    missing = [g.query_id for g in gold if g.query_id not in by_id]
    if len(missing) > allow_missing:
        raise IdMismatch(
            f"{len(missing)} gold ids missing from results "
            f"(allowed {allow_missing}): {missing[:5]}..."
        )
    if missing:
        log.warning("%d gold ids missing from results; scored as empty rankings", len(missing))
    extra = sorted(set(by_id) - gold_ids)
    if extra:
        log.warning("%d result ids not in gold; ignored", len(extra))

    per_query: list[PerQuery] = []
    for g in gold:
        res = by_id.get(g.query_id)
        ranked = res.titles() if res is not None else []
        per_query.append(
            PerQuery(
                query_id=g.query_id,
                r_precision=r_precision(ranked, g.answer_sets),
                recall={k: recall_at_k(ranked, g.answer_sets, k) for k in ks},
            )
        )
    count = len(per_query)
    return MetricsReport(
        query_count=count,
        ks=ks,
        r_precision=sum(pq.r_precision for pq in per_query) / count,
        recall={k: sum(pq.recall[k] for pq in per_query) / count for k in ks},
        per_query=per_query,
        per_k_counts={k: count for k in ks},
        missing_results=len(missing),
        extra_results=len(extra),
    )


def evaluate(
    results_path: str | Path,
    gold_path: str | Path,
    ks: Sequence[int] = (1, 5, 10),
    allow_missing: int = 0,
) -> MetricsReport:
    gold, excluded = load_gold(gold_path)
    report = evaluate_rankings(read_results(results_path), gold, ks, allow_missing)
    report.excluded_queries = excluded
    return report
