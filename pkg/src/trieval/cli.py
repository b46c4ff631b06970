"""Command-line entry point for the retrieval toolkit.

Subcommands:

* ``ingest``      parse corpus (or raw wikitext) JSONL into corpus JSONL
* ``sample``      generate PT/HL/PTHL supervision instances
* ``subsample``   uniform random sample of an instance file
* ``build-index`` build the title trie (+ vocabulary) or a sparse index
* ``retrieve``    beam-search retrieval with a pluggable scorer
* ``baseline``    BM25 / TF-IDF retrieval over a sparse index
* ``evaluate``    metrics report (JSON, TSV, table, figures)
* ``pipeline``    ingest → sample → build-index → retrieve → evaluate,
                  driven by one flat key = value config file

Every artifact gets a ``<file>.meta.json`` sidecar recording the tool
version, a hash of the resolved configuration (output locations excluded),
and the hashes of its direct inputs, so runs can be compared and replayed.
Logs go to stderr; reports go to stdout. Exit codes: 0 success, 1 data
errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from . import __version__
from .baselines import (
    BM25_B,
    BM25_K1,
    bm25_search,
    build_inverted_index,
    load_index,
    save_index,
    tfidf_search,
)
from .corpus import load_corpus, save_corpus
from .decode import (
    LexicalScorer,
    OracleScorer,
    Scorer,
    UniformScorer,
    aggregate,
    beam_search,
    beam_search_unconstrained,
    write_results,
)
from .errors import ParseError, TrievalError
from .evaluation import evaluate, load_gold
from .external import ExternalScorer
from .index import (
    build_trie,
    build_vocabulary,
    load_trie,
    load_vocabulary,
    save_trie,
    save_vocabulary,
)
from .ioutil import dumps_canonical, read_jsonl, sha256_file, sha256_text
from .report import render_figures, render_table, write_per_query_tsv
from .supervision import Mode, generate_instances, subsample, write_instances

log = logging.getLogger("trieval")


# ---------------------------------------------------------------------------
# Run configuration


@dataclass
class RunConfig:
    """Resolved settings for a pipeline run.

    Serializes to the same flat key = value format it is parsed from; a
    run writes its resolved config next to its outputs, and replaying that
    file (with any output directory) reproduces the run byte for byte for
    deterministic scorers. Output locations are deliberately not part of
    the config, so the config hash and the resolved file are identical
    across runs that differ only in where they write.
    """

    input: str = ""
    raw: bool = False
    strict: bool = True
    gold: str = ""
    mode: str = "pthl"
    max_per_doc: int | None = None
    sample_n: int | None = None
    scorer: str = "uniform"
    beam: int = 10
    max_titles: int = 5
    max_len: int = 64
    length_norm: bool = True
    unconstrained: bool = False
    k: tuple[int, ...] = (1, 5, 10)
    seed: int = 0
    workers: int = 1
    allow_missing: int = 0
    timeout: float = 10.0
    format: str = "table"
    figures: bool = True
    learning_rate: str | None = None
    scheduler: str | None = None
    dropout: str | None = None

    def items(self) -> list[tuple[str, str]]:
        out = []
        for f in sorted(fields(self), key=lambda f: f.name):
            value = getattr(self, f.name)
            if value is None:
                continue
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, tuple):
                text = ",".join(str(v) for v in value)
            else:
                text = str(value)
            out.append((f.name, text))
        return out

    @property
    def config_hash(self) -> str:
        return sha256_text(dumps_canonical(dict(self.items())))

    def write(self, path: Path) -> None:
        lines = ["# resolved run configuration"]
        lines.extend(f"{key} = {value}" for key, value in self.items())
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` pairs; ``#`` lines are comments; quotes optional."""
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ParseError(f"expected key = value, got {text!r}", line=lineno)
            key, _, value = text.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
                value = value[1:-1]
            if not key:
                raise ParseError("empty key", line=lineno)
            entries[key] = value
    return entries


def _as_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def _as_ks(value: str) -> tuple[int, ...]:
    # Raises ValueError so argparse maps bad --k values to usage errors.
    ks = tuple(sorted({int(part) for part in value.split(",") if part.strip()}))
    if not ks or ks[0] < 1:
        raise ValueError(f"every k must be >= 1, got {value!r}")
    return ks


_CONFIG_COERCERS = {
    "input": str,
    "raw": _as_bool,
    "strict": _as_bool,
    "gold": str,
    "mode": str,
    "max_per_doc": int,
    "sample_n": int,
    "scorer": str,
    "beam": int,
    "max_titles": int,
    "max_len": int,
    "length_norm": _as_bool,
    "unconstrained": _as_bool,
    "k": _as_ks,
    "seed": int,
    "workers": int,
    "allow_missing": int,
    "timeout": float,
    "format": str,
    "figures": _as_bool,
    "learning_rate": str,
    "scheduler": str,
    "dropout": str,
}

_PATH_KEYS = ("input", "gold")


def _resolve_path(base_dir: Path, value: str) -> str:
    path = Path(value)
    return value if path.is_absolute() else str(base_dir / path)


def build_run_config(entries: dict[str, str], overrides: dict, base_dir: Path) -> RunConfig:
    """Config-file values under CLI overrides, with paths resolved.

    Relative paths in the config file are taken relative to the config
    file's directory; paths given on the command line stay as typed.
    """
    cfg = RunConfig()
    for key, raw_value in entries.items():
        if key == "out_dir":
            continue  # output location, handled by the caller
        coerce = _CONFIG_COERCERS.get(key)
        if coerce is None:
            raise TrievalError(f"unknown config key {key!r}")
        try:
            value = coerce(raw_value)
        except ValueError as exc:
            raise TrievalError(f"bad value for {key}: {raw_value!r}") from exc
        if key in _PATH_KEYS:
            value = _resolve_path(base_dir, value)
        if key == "scorer" and value.startswith("oracle:"):
            value = "oracle:" + _resolve_path(base_dir, value[len("oracle:") :])
        setattr(cfg, key, value)
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    if not cfg.input:
        raise TrievalError("config is missing 'input'")
    if not cfg.gold:
        raise TrievalError("config is missing 'gold'")
    if cfg.format not in ("table", "json"):
        raise TrievalError(f"format must be table or json, got {cfg.format!r}")
    try:
        Mode.parse(cfg.mode)
    except ValueError as exc:
        raise TrievalError(f"bad mode {cfg.mode!r}; expected pt, hl, or pthl") from exc
    return cfg


# ---------------------------------------------------------------------------
# Artifact metadata


def write_sidecar(artifact: str | Path, config_hash: str, inputs: list[str | Path]) -> None:
    meta = {
        "tool_version": __version__,
        "config_hash": config_hash,
        "input_hashes": {Path(p).name: sha256_file(p) for p in inputs},
    }
    side = Path(str(artifact) + ".meta.json")
    side.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _args_hash(args: argparse.Namespace, output_keys: set[str]) -> str:
    skip = output_keys | {"func", "command"}
    items = {}
    for key, value in vars(args).items():
        if key in skip or value is None:
            continue
        items[key] = list(value) if isinstance(value, tuple) else value
    return sha256_text(dumps_canonical(items))


# ---------------------------------------------------------------------------
# Scorers and shared runners


def make_scorer(
    spec: str,
    vocab,
    timeout: float = 10.0,
    env: dict[str, str] | None = None,
) -> Scorer:
    if spec == "uniform":
        return UniformScorer()
    if spec == "lexical":
        return LexicalScorer(vocab)
    if spec.startswith("oracle:"):
        gold, _ = load_gold(spec[len("oracle:") :])
        return OracleScorer(vocab, {g.query: g.answer_sets[0] for g in gold})
    if spec.startswith("external:"):
        return ExternalScorer(spec[len("external:") :], vocab.sha256, timeout=timeout, env=env)
    raise TrievalError(
        f"unknown scorer {spec!r}; expected uniform, lexical, "
        "oracle:<gold-file>, or external:<command or host:port>"
    )


def _scorer_env(learning_rate, scheduler, dropout) -> dict[str, str]:
    env = {}
    if learning_rate is not None:
        env["TRIEVAL_LEARNING_RATE"] = learning_rate
    if scheduler is not None:
        env["TRIEVAL_SCHEDULER"] = scheduler
    if dropout is not None:
        env["TRIEVAL_DROPOUT"] = dropout
    return env


def load_queries(path: str | Path) -> list[tuple[str, str]]:
    """(id, query text) pairs; gold files work directly as query files."""
    queries = []
    for lineno, obj in read_jsonl(path):
        try:
            queries.append((str(obj["id"]), obj["query"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad query record: {exc}", line=lineno) from exc
    return queries


def run_retrieve(
    *,
    trie_path,
    vocab_path,
    queries_path,
    out_path,
    scorer_spec: str,
    beam: int,
    max_titles: int,
    max_len: int,
    length_norm: bool,
    unconstrained: bool,
    workers: int,
    timeout: float,
    env: dict[str, str],
    config_hash: str,
) -> int:
    vocab = load_vocabulary(vocab_path)
    trie = load_trie(trie_path)
    if trie.vocab_sha256 and trie.vocab_sha256 != vocab.sha256:
        raise TrievalError(
            "trie was built against a different vocabulary "
            f"({trie.vocab_sha256[:12]}... vs {vocab.sha256[:12]}...)"
        )
    queries = load_queries(queries_path)
    valid_titles = frozenset(trie.titles) if unconstrained else None

    # The first scorer validates the selector string (and, for external
    # scorers, the vocabulary handshake) before any decoding starts.
    shared = make_scorer(scorer_spec, vocab, timeout, env)
    created: list[Scorer] = [shared]
    local = threading.local()
    lock = threading.Lock()

    def get_scorer() -> Scorer:
        if shared.shareable or workers <= 1:
            return shared
        scorer = getattr(local, "scorer", None)
        if scorer is None:
            scorer = make_scorer(scorer_spec, vocab, timeout, env)
            with lock:
                created.append(scorer)
            local.scorer = scorer
        return scorer

    def decode_one(item: tuple[str, str]):
        query_id, text = item
        scorer = get_scorer()
        if unconstrained:
            hyps = beam_search_unconstrained(
                scorer, vocab, text, beam, max_titles, max_len, length_norm
            )
        else:
            hyps = beam_search(scorer, trie, text, beam, max_titles, max_len, length_norm)
        return aggregate(hyps, query_id=query_id, length_norm=length_norm, valid_titles=valid_titles)

    try:
        if workers <= 1:
            results = [decode_one(q) for q in queries]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(decode_one, queries))
    finally:
        for scorer in created:
            scorer.close()
    count = write_results(results, out_path)
    write_sidecar(out_path, config_hash, [trie_path, vocab_path, queries_path])
    log.info("retrieved %d queries -> %s", count, out_path)
    return count


def run_evaluate(
    *,
    results_path,
    gold_path,
    ks,
    allow_missing: int,
    out_path: Path,
    figures: bool,
    fmt: str,
    config_hash: str,
) -> None:
    report = evaluate(results_path, gold_path, ks=ks, allow_missing=allow_missing)
    out_path.write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    artifacts = [out_path]
    tsv_path = out_path.parent / "per_query.tsv"
    write_per_query_tsv(report, tsv_path)
    artifacts.append(tsv_path)
    if figures:
        artifacts.extend(render_figures(report, out_path.parent))
    for artifact in artifacts:
        write_sidecar(artifact, config_hash, [results_path, gold_path])
    if fmt == "json":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(render_table(report))


# ---------------------------------------------------------------------------
# Subcommand handlers


def cmd_ingest(args) -> int:
    corpus = load_corpus(args.input, raw=args.raw, strict=args.strict)
    count = save_corpus(corpus, args.out)
    write_sidecar(args.out, _args_hash(args, {"out"}), [args.input])
    stats = corpus.stats
    log.info(
        "ingested %d documents (%d sentences; %d duplicates, %d skipped lines, "
        "%d malformed links, %d dangling links)",
        count,
        corpus.sentence_count(),
        stats.duplicates,
        stats.skipped_lines,
        stats.malformed,
        stats.dangling_links,
    )
    return 0


def cmd_sample(args) -> int:
    corpus = load_corpus(args.corpus)
    instances = generate_instances(
        corpus, Mode.parse(args.mode), seed=args.seed, max_per_doc=args.max_per_doc
    )
    count = write_instances(instances, args.out)
    write_sidecar(args.out, _args_hash(args, {"out"}), [args.corpus])
    log.info("wrote %d %s instances -> %s", count, args.mode.upper(), args.out)
    return 0


def cmd_subsample(args) -> int:
    count = subsample(args.input, args.out, args.n, seed=args.seed)
    write_sidecar(args.out, _args_hash(args, {"out"}), [args.input])
    log.info("sampled %d lines -> %s", count, args.out)
    return 0


def cmd_build_index(args) -> int:
    corpus = load_corpus(args.corpus)
    config_hash = _args_hash(args, {"out", "vocab"})
    if args.type == "trie":
        inputs = [args.corpus]
        if args.use_vocab:
            vocab = load_vocabulary(args.use_vocab)
            inputs.append(args.use_vocab)
        else:
            vocab = build_vocabulary(corpus.titles())
            vocab_path = args.vocab or str(Path(args.out).parent / "vocab.txt")
            save_vocabulary(vocab, vocab_path)
            write_sidecar(vocab_path, config_hash, [args.corpus])
            log.info("wrote vocabulary (%d tokens) -> %s", len(vocab), vocab_path)
        trie = build_trie(corpus.titles(), vocab)
        save_trie(trie, args.out)
        write_sidecar(args.out, config_hash, inputs)
        log.info("built trie over %d titles -> %s", len(trie), args.out)
    else:
        index = build_inverted_index(corpus, index_type=args.type)
        save_index(index, args.out)
        write_sidecar(args.out, config_hash, [args.corpus])
        log.info(
            "built %s index (%d documents, %d terms) -> %s",
            args.type,
            index.doc_count,
            len(index.postings),
            args.out,
        )
    return 0


def cmd_retrieve(args) -> int:
    run_retrieve(
        trie_path=args.trie,
        vocab_path=args.vocab,
        queries_path=args.queries,
        out_path=args.out,
        scorer_spec=args.scorer,
        beam=args.beam,
        max_titles=args.max_titles,
        max_len=args.max_len,
        length_norm=args.length_norm,
        unconstrained=args.unconstrained,
        workers=args.workers,
        timeout=args.timeout,
        env=_scorer_env(args.learning_rate, args.scheduler, args.dropout),
        config_hash=_args_hash(args, {"out"}),
    )
    return 0


def cmd_baseline(args) -> int:
    index = load_index(args.index)
    queries = load_queries(args.queries)

    def search_one(item: tuple[str, str]):
        query_id, text = item
        if args.method == "bm25":
            return bm25_search(index, text, k=args.k, k1=args.k1, b=args.b, query_id=query_id)
        return tfidf_search(index, text, k=args.k, query_id=query_id)

    if args.workers <= 1:
        results = [search_one(q) for q in queries]
    else:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(search_one, queries))
    count = write_results(results, args.out)
    write_sidecar(args.out, _args_hash(args, {"out"}), [args.index, args.queries])
    log.info("ranked %d queries with %s -> %s", count, args.method, args.out)
    return 0


def cmd_evaluate(args) -> int:
    run_evaluate(
        results_path=args.results,
        gold_path=args.gold,
        ks=args.k,
        allow_missing=args.allow_missing,
        out_path=Path(args.out),
        figures=args.figures,
        fmt=args.format,
        config_hash=_args_hash(args, {"out"}),
    )
    return 0


def cmd_pipeline(args) -> int:
    config_path = Path(args.config)
    entries = parse_config_file(config_path)
    overrides = {
        key: getattr(args, key)
        for key in _CONFIG_COERCERS
        if hasattr(args, key) and getattr(args, key) is not None
    }
    cfg = build_run_config(entries, overrides, config_path.parent)

    out_dir = args.out_dir or entries.get("out_dir")
    if not out_dir:
        raise TrievalError("no output directory: set out_dir in the config or pass --out-dir")
    if args.out_dir is None and "out_dir" in entries:
        out_dir = _resolve_path(config_path.parent, out_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    chash = cfg.config_hash
    cfg.write(out_dir / "config.resolved.toml")

    corpus = load_corpus(cfg.input, raw=cfg.raw, strict=cfg.strict)
    corpus_path = out_dir / "corpus.jsonl"
    save_corpus(corpus, corpus_path)
    write_sidecar(corpus_path, chash, [cfg.input])
    log.info("pipeline: ingested %d documents", len(corpus))

    instances_path = out_dir / "instances.jsonl"
    count = write_instances(
        generate_instances(
            corpus, Mode.parse(cfg.mode), seed=cfg.seed, max_per_doc=cfg.max_per_doc
        ),
        instances_path,
    )
    write_sidecar(instances_path, chash, [corpus_path])
    log.info("pipeline: generated %d %s instances", count, cfg.mode.upper())
    if cfg.sample_n is not None:
        sampled_path = out_dir / "instances.sample.jsonl"
        kept = subsample(instances_path, sampled_path, cfg.sample_n, seed=cfg.seed)
        write_sidecar(sampled_path, chash, [instances_path])
        log.info("pipeline: subsampled %d instances", kept)

    vocab = build_vocabulary(corpus.titles())
    vocab_path = out_dir / "vocab.txt"
    save_vocabulary(vocab, vocab_path)
    write_sidecar(vocab_path, chash, [corpus_path])
    trie = build_trie(corpus.titles(), vocab)
    trie_path = out_dir / "titles.trie"
    save_trie(trie, trie_path)
    write_sidecar(trie_path, chash, [corpus_path])
    log.info("pipeline: built trie over %d titles", len(trie))

    results_path = out_dir / "results.jsonl"
    run_retrieve(
        trie_path=trie_path,
        vocab_path=vocab_path,
        queries_path=cfg.gold,
        out_path=results_path,
        scorer_spec=cfg.scorer,
        beam=cfg.beam,
        max_titles=cfg.max_titles,
        max_len=cfg.max_len,
        length_norm=cfg.length_norm,
        unconstrained=cfg.unconstrained,
        workers=cfg.workers,
        timeout=cfg.timeout,
        env=_scorer_env(cfg.learning_rate, cfg.scheduler, cfg.dropout),
        config_hash=chash,
    )

    run_evaluate(
        results_path=results_path,
        gold_path=cfg.gold,
        ks=cfg.k,
        allow_missing=cfg.allow_missing,
        out_path=out_dir / "metrics.json",
        figures=cfg.figures,
        fmt=cfg.format,
        config_hash=chash,
    )
    return 0


# ---------------------------------------------------------------------------
# Parser


def _add_passthrough_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("external scorer pass-through")
    group.add_argument("--learning-rate", help="forwarded opaquely to external scorers")
    group.add_argument("--scheduler", help="forwarded opaquely to external scorers")
    group.add_argument("--dropout", help="forwarded opaquely to external scorers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trieval",
        description="Distantly supervised autoregressive document retrieval toolkit.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("ingest", help="parse a corpus into corpus JSONL")
    p.add_argument("--input", required=True, help="corpus or raw-wikitext JSONL")
    p.add_argument("--out", required=True, help="output corpus JSONL")
    p.add_argument("--raw", action="store_true", help="input is raw wikitext JSONL")
    p.add_argument(
        "--no-strict",
        dest="strict",
        action="store_false",
        help="skip and count malformed lines instead of failing",
    )
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("sample", help="generate distant-supervision instances")
    p.add_argument("--corpus", required=True)
    p.add_argument("--mode", required=True, choices=["pt", "hl", "pthl"])
    p.add_argument("--out", required=True, help="output instance JSONL")
    p.add_argument("--max-per-doc", type=int, help="sample at most K sentences per document")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("subsample", help="uniform random sample of an instance file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_subsample)

    p = sub.add_parser("build-index", help="build the title trie or a sparse index")
    p.add_argument("--corpus", required=True)
    p.add_argument("--type", required=True, choices=["trie", "bm25", "tfidf"])
    p.add_argument("--out", required=True, help="index file (DRTR trie or DRIX sparse)")
    p.add_argument("--vocab", help="where to write the induced vocabulary (trie only)")
    p.add_argument("--use-vocab", help="build the trie against an existing vocabulary file")
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("retrieve", help="beam-search retrieval over the title trie")
    p.add_argument("--trie", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--queries", required=True, help="JSONL with id and query fields")
    p.add_argument("--out", required=True, help="output results JSONL")
    p.add_argument(
        "--scorer",
        default="uniform",
        help="uniform | lexical | oracle:<gold-file> | external:<command or host:port>",
    )
    p.add_argument("--beam", type=int, default=10)
    p.add_argument("--max-titles", type=int, default=5)
    p.add_argument("--max-len", type=int, default=64)
    p.add_argument(
        "--no-length-norm",
        dest="length_norm",
        action="store_false",
        help="prune on raw cumulative log-probability",
    )
    p.add_argument(
        "--unconstrained",
        action="store_true",
        help="decode over the whole vocabulary; non-title outputs are discarded",
    )
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timeout", type=float, default=10.0, help="external scorer deadline (s)")
    _add_passthrough_flags(p)
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("baseline", help="sparse retrieval over a DRIX index")
    p.add_argument("--index", required=True)
    p.add_argument("--queries", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", required=True, choices=["bm25", "tfidf"])
    p.add_argument("--k", type=int, default=100, help="ranking depth")
    p.add_argument("--k1", type=float, default=BM25_K1)
    p.add_argument("--b", type=float, default=BM25_B)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("evaluate", help="score results against gold answer sets")
    p.add_argument("--results", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out", required=True, help="metrics JSON path")
    p.add_argument("--k", type=_as_ks, default=(1, 5, 10), help="comma-separated k list")
    p.add_argument("--allow-missing", type=int, default=0)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--no-figures", dest="figures", action="store_false")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="run ingest through evaluate from a config file")
    p.add_argument("config", help="flat key = value config file")
    p.add_argument("--out-dir", help="output directory (overrides config out_dir)")
    p.add_argument("--scorer")
    p.add_argument("--mode", choices=["pt", "hl", "pthl"])
    p.add_argument("--beam", type=int)
    p.add_argument("--max-titles", type=int, dest="max_titles")
    p.add_argument("--max-len", type=int, dest="max_len")
    p.add_argument("--k", type=_as_ks, help="comma-separated k list")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--allow-missing", type=int, dest="allow_missing")
    p.add_argument("--timeout", type=float)
    p.add_argument("--sample-n", type=int, dest="sample_n")
    p.add_argument("--max-per-doc", type=int, dest="max_per_doc")
    p.add_argument("--format", choices=["table", "json"])
    p.add_argument("--length-norm", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--unconstrained", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--figures", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--raw", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=None)
    _add_passthrough_flags(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s", force=True
    )
    try:
        return args.func(args)
    except TrievalError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    except OSError as exc:
        print(json.dumps({"error": "IoError", "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
