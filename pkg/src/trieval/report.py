"""Render a MetricsReport: aligned text table, per-query TSV, and figures.

Figures use the non-interactive Agg backend and carry fixed PNG metadata,
so repeated runs over identical inputs produce identical bytes (run
artifacts are byte-compared in tests).
"""

from __future__ import annotations

from pathlib import Path

from .evaluation import MetricsReport

_PNG_METADATA = {"Software": "trieval"}


def render_table(report: MetricsReport) -> str:
    """Summary metrics as an aligned two-column table."""
    rows = [
        ("queries", str(report.query_count)),
        ("excluded", str(report.excluded_queries)),
        ("missing", str(report.missing_results)),
        ("R-Precision", f"{report.r_precision:.4f}"),
    ]
    rows.extend((f"Recall@{k}", f"{report.recall[k]:.4f}") for k in report.ks)
    width = max(len(name) for name, _ in rows)
    value_width = max(len(value) for _, value in rows)
    return "\n".join(f"{name:<{width}}  {value:>{value_width}}" for name, value in rows)


def write_per_query_tsv(report: MetricsReport, path: str | Path) -> None:
    """One row per query: id, R-Precision, and each Recall@k."""
    header = ["id", "r_precision"] + [f"recall@{k}" for k in report.ks]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(header) + "\n")
        for pq in report.per_query:
            cells = [pq.query_id, f"{pq.r_precision:.6f}"]
            cells.extend(f"{pq.recall[k]:.6f}" for k in report.ks)
            fh.write("\t".join(cells) + "\n")


def render_figures(report: MetricsReport, out_dir: str | Path) -> list[Path]:
    """Write recall-vs-k and R-Precision-histogram PNGs; returns the paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    paths: list[Path] = []

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ks = report.ks
    ax.plot(ks, [report.recall[k] for k in ks], marker="o")
    ax.set_xlabel("k")
    ax.set_ylabel("Recall@k")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xticks(ks)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    recall_path = out_dir / "recall_at_k.png"
    fig.savefig(recall_path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)
    paths.append(recall_path)

    fig, ax = plt.subplots(figsize=(5, 3.5))
    values = [pq.r_precision for pq in report.per_query]
    ax.hist(values, bins=10, range=(0.0, 1.0), edgecolor="black")
    ax.set_xlabel("R-Precision")
    ax.set_ylabel("queries")
    fig.tight_layout()
    hist_path = out_dir / "r_precision_hist.png"
    fig.savefig(hist_path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)
    paths.append(hist_path)

    return paths
