"""Metrics rendering: text table, per-query TSV, figure files."""

import pytest

from trieval.decode import RankedResult
from trieval.evaluation import GoldRecord, evaluate_rankings
from trieval.report import render_figures, render_table, write_per_query_tsv


@pytest.fixture(scope="module")
def report():
    results = [
        RankedResult("q1", [("A", -0.1), ("B", -0.2)]),
        RankedResult("q2", [("C", -0.1)]),
        RankedResult("q3", []),
    ]
    gold = [
        GoldRecord("q1", "one", [["A"]]),
        GoldRecord("q2", "two", [["A", "B"]]),
        GoldRecord("q3", "three", [["C"]]),
    ]
    rep = evaluate_rankings(results, gold, ks=(1, 5))
    rep.excluded_queries = 2
    return rep


class TestTable:
    def test_contains_all_rows(self, report):
        table = render_table(report)
        for label in ("queries", "excluded", "missing", "R-Precision", "Recall@1", "Recall@5"):
            assert label in table
        assert "0.3333" in table  # macro R-Precision of (1, 0, 0)

    def test_columns_aligned(self, report):
        lines = render_table(report).splitlines()
        assert len({len(line) for line in lines}) == 1
        assert all("  " in line for line in lines)


class TestPerQueryTsv:
    def test_layout(self, report, tmp_path):
        path = tmp_path / "per_query.tsv"
        write_per_query_tsv(report, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "id\tr_precision\trecall@1\trecall@5"
        assert len(lines) == 4
        first = lines[1].split("\t")
        assert first[0] == "q1"
        assert first[1] == "1.000000"

    def test_deterministic(self, report, tmp_path):
        p1, p2 = tmp_path / "a.tsv", tmp_path / "b.tsv"
        write_per_query_tsv(report, p1)
        write_per_query_tsv(report, p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestFigures:
    def test_files_created_as_png(self, report, tmp_path):
        paths = render_figures(report, tmp_path)
        assert [p.name for p in paths] == ["recall_at_k.png", "r_precision_hist.png"]
        for path in paths:
            assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_renders_are_byte_identical(self, report, tmp_path):
        d1, d2 = tmp_path / "one", tmp_path / "two"
        d1.mkdir()
        d2.mkdir()
        first = render_figures(report, d1)
        second = render_figures(report, d2)
        for a, b in zip(first, second):
            assert a.read_bytes() == b.read_bytes()
