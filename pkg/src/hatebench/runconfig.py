"""Declarative benchmark configuration (JSON, schema_version 1).

One file names the corpus, the embedding files to score it with, the
detector kinds and compression variants to run, and every tunable the
pipeline accepts. The seed is mandatory: nothing in the pipeline draws
entropy outside it. Relative paths resolve against the config file's
directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .crossval import MODEL_KINDS
from .gbdt import GbdtConfig, GbdtError

SCHEMA_VERSION = 1
COMPRESSIONS = ("orig", "pca")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    corpus_path: Path
    corpus_format: "str | None"
    embeddings: dict
    model_kinds: tuple
    compressions: tuple
    pca_k: int
    k_folds: int
    seed: int
    hbos_n_bins: int
    hbos_contamination: float
    gbdt: GbdtConfig
    output_dir: Path


def _require(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise ConfigError(f"{where}: missing required key {key!r}")
    value = doc[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ConfigError(f"{where}: {key!r} must be {kind.__name__}, got {value!r}")
    return value


def load_run_config(path, seed=None, output_dir=None) -> RunConfig:
    """Parse and validate a benchmark config file.

    seed / output_dir, when given, override the file (command-line
    flags). Every referenced file must exist.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    where = str(path)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(
            f"{where}: schema_version must be {SCHEMA_VERSION}, got {doc.get('schema_version')!r}"
        )
    base = path.parent

    corpus = _require(doc, "corpus", dict, where)
    corpus_path = base / _require(corpus, "path", str, f"{where}: corpus")
    corpus_format = corpus.get("format")
    if corpus_format is not None and corpus_format not in ("jsonl", "csv"):
        raise ConfigError(f"{where}: corpus format must be 'jsonl' or 'csv'")

    embeddings_doc = _require(doc, "embeddings", dict, where)
    if not embeddings_doc:
        raise ConfigError(f"{where}: embeddings must name at least one file")
    embeddings = {}
    for name, emb_path in embeddings_doc.items():
        if not isinstance(emb_path, str):
            raise ConfigError(f"{where}: embeddings[{name!r}] must be a path string")
        embeddings[name] = base / emb_path

    model_kinds = tuple(_require(doc, "model_kinds", list, where))
    if not model_kinds or len(set(model_kinds)) != len(model_kinds):
        raise ConfigError(f"{where}: model_kinds must be non-empty and unique")
    for kind in model_kinds:
        if kind not in MODEL_KINDS:
            raise ConfigError(f"{where}: unknown model kind {kind!r}")

    compressions = tuple(_require(doc, "compressions", list, where))
    if not compressions or len(set(compressions)) != len(compressions):
        raise ConfigError(f"{where}: compressions must be non-empty and unique")
    for comp in compressions:
        if comp not in COMPRESSIONS:
            raise ConfigError(f"{where}: unknown compression {comp!r}")

    cv = _require(doc, "cv", dict, where)
    k_folds = _require(cv, "k_folds", int, f"{where}: cv")
    if "seed" not in cv and seed is None:
        raise ConfigError(f"{where}: cv.seed is mandatory (no implicit entropy)")
    if seed is None:
        seed = _require(cv, "seed", int, f"{where}: cv")
    if k_folds < 2:
        raise ConfigError(f"{where}: cv.k_folds must be >= 2")

    pca_k = doc.get("pca_k", 64)
    if isinstance(pca_k, bool) or not isinstance(pca_k, int) or pca_k < 1:
        raise ConfigError(f"{where}: pca_k must be a positive integer")

    hbos = doc.get("hbos", {})
    if not isinstance(hbos, dict) or not set(hbos) <= {"n_bins", "contamination"}:
        raise ConfigError(f"{where}: hbos block accepts only n_bins and contamination")
    hbos_n_bins = hbos.get("n_bins", 10)
    hbos_contamination = hbos.get("contamination", 0.01)
    if isinstance(hbos_n_bins, bool) or not isinstance(hbos_n_bins, int) or hbos_n_bins < 2:
        raise ConfigError(f"{where}: hbos.n_bins must be an integer >= 2")
    if not isinstance(hbos_contamination, (int, float)) or not 0 < hbos_contamination < 1:
        raise ConfigError(f"{where}: hbos.contamination must be in (0, 1)")

    gbdt_doc = doc.get("gbdt", {})
    if not isinstance(gbdt_doc, dict):
        raise ConfigError(f"{where}: gbdt block must be an object")
    if "seed" in gbdt_doc:
        raise ConfigError(f"{where}: gbdt.seed is derived from cv.seed, do not set it")
    try:
        gbdt = GbdtConfig(**gbdt_doc)
    except TypeError as exc:
        raise ConfigError(f"{where}: gbdt block: {exc}") from exc
    except GbdtError as exc:
        raise ConfigError(f"{where}: gbdt block: {exc}") from exc

    if output_dir is None:
        output_dir = base / _require(doc, "output_dir", str, where)
    output_dir = Path(output_dir)

    config = RunConfig(
        corpus_path=corpus_path,
        corpus_format=corpus_format,
        embeddings=embeddings,
        model_kinds=model_kinds,
        compressions=compressions,
        pca_k=pca_k,
        k_folds=k_folds,
        seed=seed,
        hbos_n_bins=hbos_n_bins,
        hbos_contamination=hbos_contamination,
        gbdt=gbdt,
        output_dir=output_dir,
    )
    _check_files_exist(config)
    return config


def _check_files_exist(config: RunConfig) -> None:
    if not config.corpus_path.is_file():
        raise ConfigError(f"corpus file not found: {config.corpus_path}")
    for name, emb_path in config.embeddings.items():
        if not emb_path.is_file():
            raise ConfigError(f"embedding file for {name!r} not found: {emb_path}")
