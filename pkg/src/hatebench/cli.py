"""Command-line surface for the benchmark pipeline.

Subcommands mirror the pipeline stages so each is invocable on its own:
preprocess (normalize a corpus), check (validate config, corpus, and
embedding checksums without training), benchmark (run every configured
cell through cross-validation and render tables/curves), report
(re-render from stored per-cell reports), and score (apply a saved
detector to a new embedding file).

Exit codes: 0 success, 2 config or validation error, 3 benchmark
finished with failed cells, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ._io import atomic_write
from .corpus import CorpusError, load_corpus, normalize_corpus, save_corpus
from .crossval import (
    CrossValidationError,
    CvConfig,
    EvaluationReport,
    load_report,
    run_cv,
    save_report,
    save_scores_csv,
)
from .embedstore import EmbeddingStoreError, read_embeddings
from .gbdt import GbdtError, gbdt_predict_proba, load_gbdt
from .hbos import HbosError, hbos_probability, hbos_raw_scores, load_hbos
from .pca import PcaError, load_pca, pca_transform
from .reporting import (
    MODEL_KIND_SHORT,
    BenchmarkGrid,
    ReportError,
    emit_curves,
    render_results_table,
)
from .runconfig import ConfigError, RunConfig, load_run_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARTIAL = 3
EXIT_IO = 4

_VALIDATION_ERRORS = (
    ConfigError,
    CorpusError,
    EmbeddingStoreError,
    CrossValidationError,
    ReportError,
    HbosError,
    GbdtError,
    PcaError,
    ValueError,
)


def cmd_preprocess(corpus_in, corpus_out, report_path=None, format=None):
    """Normalize every text and write the corpus plus a counters report."""
    corpus = load_corpus(corpus_in, format=format)
    normalized, report = normalize_corpus(corpus)
    save_corpus(normalized, corpus_out, format=format)
    if report_path is None:
        report_path = Path(str(corpus_out) + ".report.json")
    with atomic_write(report_path, "w") as fh:
        json.dump(report.as_dict(), fh, ensure_ascii=False, indent=2)
        fh.write("\n")
    return report


def _load_validated_inputs(config: RunConfig):
    """Corpus plus every embedding matrix, checksum-bound before any training."""
    corpus = load_corpus(config.corpus_path, format=config.corpus_format)
    matrices = {}
    for name, path in config.embeddings.items():
        matrices[name] = read_embeddings(path, expected_corpus=corpus)
    return corpus, matrices


def cmd_check(config: RunConfig) -> dict:
    corpus, matrices = _load_validated_inputs(config)
    n_cells = len(matrices) * len(config.model_kinds) * len(config.compressions)
    return {
        "corpus": corpus.name,
        "rows": len(corpus),
        "positives": corpus.n_positive,
        "embeddings": {name: m.dim for name, m in matrices.items()},
        "cells": n_cells,
    }


def _cell_id(key) -> str:
    return "_".join(key)


def _run_cell(spec):
    """One (embedding, kind, compression) cell; exceptions become values
    so sibling cells keep running."""
    key, data, labels, cv_config, hbos_n_bins, hbos_contamination, gbdt_config = spec
    try:
        report = run_cv(
            data,
            labels,
            cv_config,
            hbos_n_bins=hbos_n_bins,
            hbos_contamination=hbos_contamination,
            gbdt_config=gbdt_config,
        )
        return key, report, None
    except Exception as exc:
        return key, None, f"{type(exc).__name__}: {exc}"


def cmd_benchmark(config: RunConfig, jobs=None):
    """Run the full grid; returns (grid, failures dict).

    Cells run in a process pool (jobs=1 stays in-process); all output
    files are written atomically, so reruns with the same config are
    byte-identical regardless of pool scheduling.
    """
    corpus, matrices = _load_validated_inputs(config)
    labels = corpus.labels

    specs = []
    for name in config.embeddings:
        for kind in config.model_kinds:
            for comp in config.compressions:
                cv_config = CvConfig(
                    k_folds=config.k_folds,
                    seed=config.seed,
                    model_kind=kind,
                    use_pca=comp == "pca",
                    pca_k=config.pca_k,
                )
                specs.append(
                    (
                        (name, MODEL_KIND_SHORT[kind], comp),
                        matrices[name].data,
                        labels,
                        cv_config,
                        config.hbos_n_bins,
                        config.hbos_contamination,
                        config.gbdt,
                    )
                )

    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1:
        outcomes = [_run_cell(spec) for spec in specs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_cell, specs))

    out = config.output_dir
    (out / "reports").mkdir(parents=True, exist_ok=True)
    (out / "scores").mkdir(parents=True, exist_ok=True)

    cells = {}
    failures = {}
    manifest_cells = {}
    for key, report, error in outcomes:
        cell = _cell_id(key)
        if error is not None:
            failures[cell] = error
            continue
        cells[key] = report
        report_path = out / "reports" / f"{cell}.json"
        save_report(report, report_path)
        save_scores_csv(report, out / "scores" / f"{cell}.csv", ids=corpus.ids)
        emit_curves(report, out / "curves" / cell)
        manifest_cells[cell] = {
            "embedding": key[0],
            "kind": key[1],
            "compression": key[2],
            "report": f"reports/{cell}.json",
        }

    grid = BenchmarkGrid(dataset_name=corpus.name, cells=cells)
    if cells:
        with atomic_write(out / "results.md", "w") as fh:
            fh.write(render_results_table(grid, "markdown"))
        with atomic_write(out / "results.csv", "w") as fh:
            fh.write(render_results_table(grid, "csv"))
    with atomic_write(out / "grid.json", "w") as fh:
        json.dump(
            {
                "kind": "benchmark_grid",
                "dataset": corpus.name,
                "seed": config.seed,
                "cells": manifest_cells,
                "failures": failures,
            },
            fh,
            ensure_ascii=False,
            indent=2,
        )
        fh.write("\n")
    return grid, failures


def cmd_report(out_dir):
    """Re-render tables and curves from the stored per-cell reports."""
    out = Path(out_dir)
    manifest = json.loads((out / "grid.json").read_text(encoding="utf-8"))
    if manifest.get("kind") != "benchmark_grid":
        raise ConfigError(f"{out / 'grid.json'}: not a benchmark grid manifest")
    cells = {}
    for cell, entry in manifest["cells"].items():
        key = (entry["embedding"], entry["kind"], entry["compression"])
        cells[key] = load_report(out / entry["report"])
        emit_curves(cells[key], out / "curves" / cell)
    grid = BenchmarkGrid(dataset_name=manifest["dataset"], cells=cells)
    with atomic_write(out / "results.md", "w") as fh:
        fh.write(render_results_table(grid, "markdown"))
    with atomic_write(out / "results.csv", "w") as fh:
        fh.write(render_results_table(grid, "csv"))
    return grid


def cmd_score(model_path, embeddings_path, out_path, pca_model_path=None):
    """Apply a saved detector to an embedding file.

    Output scores are target-class probabilities for both detector
    kinds; a saved PCA model, when given, is applied first and selects
    the compressed HBOS rescaling divisor.
    """
    doc = json.loads(Path(model_path).read_text(encoding="utf-8"))
    kind = doc.get("kind")
    matrix = read_embeddings(embeddings_path)
    X = matrix.data
    if pca_model_path is not None:
        X = pca_transform(load_pca(pca_model_path), X)
    if kind == "hbos":
        model = load_hbos(model_path)
        scores = 1.0 - hbos_probability(
            hbos_raw_scores(model, X), compressed=pca_model_path is not None
        )
    elif kind == "gbdt":
        model = load_gbdt(model_path)
        scores = gbdt_predict_proba(model, X)
    else:
        raise ConfigError(f"{model_path}: unknown model kind {kind!r}")
    with atomic_write(out_path, "w") as fh:
        fh.write("row,score\n")
        for i, s in enumerate(scores):
            fh.write(f"{i},{float(s)!r}\n")
    return scores


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hatebench",
        description="Hate-speech detection benchmark: normalize, validate, cross-validate, render.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="normalize a corpus and write rule counters")
    p.add_argument("--in", dest="corpus_in", required=True, help="input corpus (jsonl/csv)")
    p.add_argument("--out", dest="corpus_out", required=True, help="normalized corpus path")
    p.add_argument("--report", default=None, help="counters JSON (default: OUT.report.json)")
    p.add_argument("--format", choices=("jsonl", "csv"), default=None)

    p = sub.add_parser("check", help="validate config, corpus, and embedding checksums")
    p.add_argument("--config", required=True)

    p = sub.add_parser("benchmark", help="run every configured cell and render results")
    p.add_argument("--config", required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--out", default=None, help="override output directory")
    p.add_argument("--seed", type=int, default=None, help="override cv.seed")

    p = sub.add_parser("report", help="re-render tables and curves from stored reports")
    p.add_argument("--out", required=True, help="benchmark output directory")

    p = sub.add_parser("score", help="apply a saved detector to an embedding file")
    p.add_argument("--model", required=True, help="saved hbos/gbdt model JSON")
    p.add_argument("--embeddings", required=True, help="EMB1 file to score")
    p.add_argument("--out", required=True, help="output CSV (row,score)")
    p.add_argument("--pca-model", default=None, help="saved PCA model applied before scoring")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "preprocess":
            report = cmd_preprocess(args.corpus_in, args.corpus_out, args.report, args.format)
            print(
                f"normalized {report.n_texts} texts "
                f"({report.urls_removed} urls, {report.exclamations_removed} exclamations, "
                f"{report.emojis_replaced} emoji, {report.encoding_fixes} encoding fixes, "
                f"{report.punctuation_runs_collapsed} punctuation runs)"
            )
            if report.empty_ids:
                print(f"warning: {len(report.empty_ids)} texts normalized to empty", file=sys.stderr)
            return EXIT_OK
        if args.command == "check":
            summary = cmd_check(load_run_config(args.config))
            print(json.dumps(summary, ensure_ascii=False, indent=2))
            return EXIT_OK
        if args.command == "benchmark":
            config = load_run_config(args.config, seed=args.seed, output_dir=args.out)
            grid, failures = cmd_benchmark(config, jobs=args.jobs)
            print(f"{len(grid.cells)} cells ok, {len(failures)} failed -> {config.output_dir}")
            for cell, message in sorted(failures.items()):
                print(f"cell {cell} failed: {message}", file=sys.stderr)
            return EXIT_PARTIAL if failures else EXIT_OK
        if args.command == "report":
            grid = cmd_report(args.out)
            print(f"re-rendered {len(grid.cells)} cells -> {args.out}")
            return EXIT_OK
        if args.command == "score":
            scores = cmd_score(args.model, args.embeddings, args.out, args.pca_model)
            print(f"scored {len(scores)} rows -> {args.out}")
            return EXIT_OK
        raise AssertionError(f"unhandled command {args.command}")
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
