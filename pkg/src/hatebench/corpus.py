"""Labeled comment corpora: loading, saving, normalization.

A corpus is an ordered list of (id, text, label) records with binary
labels (0 = neutral, 1 = hate/toxic). Files come in two formats:

* JSONL: one object per line with required keys ``"text"`` and
  ``"labels"`` and an optional ``"id"``; missing ids are the zero-based
  record index.
* CSV: header row required; ``text``/``labels``/``id`` columns are
  recognized case-insensitively.

``normalize_corpus`` maps the text normalizer over all records and
aggregates its per-rule counters into a ``NormalizationReport``. Texts
that normalize to "" are retained (downstream scoring needs exactly one
output per record) and surface in the report's ``empty_ids``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from ._io import atomic_write
from .normalize import NormalizationCounts, normalize_text

__all__ = [
    "CorpusError",
    "CorpusRecord",
    "LabeledCorpus",
    "NormalizationReport",
    "load_corpus",
    "normalize_corpus",
    "save_corpus",
]


class CorpusError(ValueError):
    """Malformed corpus file or corpus invariant violation."""


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    text: str
    label: int


@dataclass(frozen=True)
class LabeledCorpus:
    records: tuple
    name: str = "corpus"
    language_tag: str = "und"

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen = set()
        for rec in self.records:
            if rec.label not in (0, 1) or isinstance(rec.label, bool):
                raise CorpusError(
                    f"record {rec.id!r}: label must be 0 or 1, got {rec.label!r}"
                )
            if rec.id in seen:
                raise CorpusError(f"duplicate id {rec.id!r}")
            seen.add(rec.id)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def texts(self) -> "list[str]":
        return [rec.text for rec in self.records]

    @property
    def labels(self) -> np.ndarray:
        return np.array([rec.label for rec in self.records], dtype=np.int64)

    @property
    def ids(self) -> "list[str]":
        return [rec.id for rec in self.records]

    @property
    def n_positive(self) -> int:
        return int(self.labels.sum()) if self.records else 0


@dataclass(frozen=True)
class NormalizationReport:
    """Aggregate normalizer activity over one corpus; a pure function
    of the input corpus."""

    exclamations_removed: int = 0
    urls_removed: int = 0
    punctuation_runs_collapsed: int = 0
    emojis_replaced: int = 0
    encoding_fixes: int = 0
    n_texts: int = 0
    empty_ids: tuple = ()

    def as_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["empty_ids"] = list(self.empty_ids)
        return out


def _coerce_label(value, where: str) -> int:
    if isinstance(value, bool):
        raise CorpusError(f"{where}: label must be 0 or 1, got {value!r}")
    if isinstance(value, int):
        coerced = value
    elif isinstance(value, str) and value.strip() in ("0", "1"):
        coerced = int(value.strip())
    else:
        raise CorpusError(f"{where}: label must be 0 or 1, got {value!r}")
    if coerced not in (0, 1):
        raise CorpusError(f"{where}: label must be 0 or 1, got {value!r}")
    return coerced


def _infer_format(path: Path, format) -> str:
    if format is not None:
        if format not in ("jsonl", "csv"):
            raise CorpusError(f"unknown corpus format {format!r}")
        return format
    suffix = path.suffix.lower()
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    raise CorpusError(
        f"cannot infer format from suffix {suffix!r}; pass format='jsonl' or 'csv'"
    )


def _load_jsonl(path: Path) -> "list[CorpusRecord]":
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path.name}: line {line_no}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{where}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise CorpusError(f"{where}: expected an object, got {type(obj).__name__}")
            if "text" not in obj or "labels" not in obj:
                raise CorpusError(f'{where}: missing required key "text" or "labels"')
            text = obj["text"]
            if not isinstance(text, str):
                raise CorpusError(f"{where}: text must be a string")
            label = _coerce_label(obj["labels"], where)
            rec_id = str(obj["id"]) if "id" in obj else str(len(records))
            records.append(CorpusRecord(id=rec_id, text=text, label=label))
    return records


def _load_csv(path: Path) -> "list[CorpusRecord]":
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError(f"{path.name}: empty file, header row required") from None
        columns = {name.strip().lower(): i for i, name in enumerate(header)}
        if "text" not in columns or "labels" not in columns:
            raise CorpusError(
                f'{path.name}: header must contain "text" and "labels" columns, '
                f"got {header!r}"
            )
        text_col, label_col = columns["text"], columns["labels"]
        id_col = columns.get("id")
        for row in reader:
            where = f"{path.name}: row {reader.line_num}"
            if not row:
                continue
            needed = max(text_col, label_col, id_col if id_col is not None else 0)
            if len(row) <= needed:
                raise CorpusError(f"{where}: expected {needed + 1} columns, got {len(row)}")
            label = _coerce_label(row[label_col], where)
            rec_id = row[id_col] if id_col is not None else str(len(records))
            records.append(CorpusRecord(id=rec_id, text=row[text_col], label=label))
    return records


def load_corpus(path, format=None, name=None, language_tag: str = "und") -> LabeledCorpus:
    """Load a labeled corpus from a JSONL or CSV file.

    Raises CorpusError naming the offending line/row for malformed
    records, labels outside {0, 1}, and duplicate ids.
    """
    path = Path(path)
    fmt = _infer_format(path, format)
    records = _load_jsonl(path) if fmt == "jsonl" else _load_csv(path)
    return LabeledCorpus(
        records=tuple(records),
        name=name if name is not None else path.stem,
        language_tag=language_tag,
    )


def save_corpus(corpus: LabeledCorpus, path, format=None) -> None:
    """Write a corpus to JSONL or CSV; inverse of load_corpus."""
    path = Path(path)
    fmt = _infer_format(path, format)
    if fmt == "jsonl":
        with atomic_write(path, "w") as fh:
            for rec in corpus.records:
                fh.write(
                    json.dumps(
                        {"id": rec.id, "text": rec.text, "labels": rec.label},
                        ensure_ascii=False,
                    )
                )
                fh.write("\n")
    else:
        # The csv module cannot represent NUL in a field; refuse rather
        # than emit a file that will not round-trip.
        for rec in corpus.records:
            if "\x00" in rec.id or "\x00" in rec.text:
                raise CorpusError(
                    f"record {rec.id!r} contains a NUL character; "
                    "csv cannot represent it, use jsonl"
                )
        with atomic_write(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id", "text", "labels"])
            for rec in corpus.records:
                writer.writerow([rec.id, rec.text, rec.label])


def normalize_corpus(corpus: LabeledCorpus) -> "tuple[LabeledCorpus, NormalizationReport]":
    """Apply the text normalizer to every record.

    Returns the normalized corpus (same ids, labels, and order) and the
    aggregated per-rule counters.
    """
    total = NormalizationCounts()
    records = []
    empty_ids = []
    for rec in corpus.records:
        text, counts = normalize_text(rec.text)
        total = total + counts
        if not text:
            empty_ids.append(rec.id)
        records.append(CorpusRecord(id=rec.id, text=text, label=rec.label))
    report = NormalizationReport(
        n_texts=len(corpus),
        empty_ids=tuple(empty_ids),
        **total.as_dict(),
    )
    normalized = LabeledCorpus(
        records=tuple(records), name=corpus.name, language_tag=corpus.language_tag
    )
    return normalized, report
