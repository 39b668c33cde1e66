"""Results tables and ROC/PRC curve files.

A benchmark grid maps (embedding, detector kind, compression) to an
evaluation report and renders as one table: one row per "1c/2c
embedding" method, metric columns split into original and
PCA-compressed variants. Accuracy is shown in percent with two
decimals, the other metrics with three; rounding is half-to-even so
rendered strings are platform-independent. Curves are written as CSV
plus hand-emitted SVG (no plotting dependency, byte-deterministic).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path

from ._io import atomic_write
from .crossval import ONE_CLASS_HBOS, TWO_CLASS_GBDT, EvaluationReport

MISSING_CELL = "—"
MODEL_KIND_SHORT = {ONE_CLASS_HBOS: "1c", TWO_CLASS_GBDT: "2c"}
COMPRESSIONS = ("orig", "pca")

_COLUMNS = (
    ("Accuracy (%) Orig.", "accuracy_pct_orig"),
    ("Accuracy (%) PCA", "accuracy_pct_pca"),
    ("Kappa Orig.", "kappa_orig"),
    ("Kappa PCA", "kappa_pca"),
    ("AUC ROC Orig.", "auc_roc_orig"),
    ("AUC ROC PCA", "auc_roc_pca"),
    ("AUC PRC Orig.", "auc_prc_orig"),
    ("AUC PRC PCA", "auc_prc_pca"),
)


class ReportError(ValueError):
    pass


def format_percent(value: float) -> str:
    """0.809625 -> '80.96'; exact decimal arithmetic, ties to even."""
    scaled = Decimal(repr(float(value))) * 100
    return str(scaled.quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN))


def format_metric(value: float) -> str:
    """0.7701 -> '0.770'; ties to even."""
    return str(Decimal(repr(float(value))).quantize(Decimal("0.001"), rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class BenchmarkGrid:
    """Evaluation reports keyed by (embedding, kind, compression).

    kind is '1c' or '2c', compression 'orig' or 'pca'; every report must
    come from the same dataset (row count) and master seed.
    """

    dataset_name: str
    cells: dict

    def __post_init__(self):
        seeds = set()
        row_counts = set()
        for key, report in self.cells.items():
            if not (isinstance(key, tuple) and len(key) == 3):
                raise ReportError(f"cell key must be (embedding, kind, compression), got {key!r}")
            embedding, kind, compression = key
            if kind not in MODEL_KIND_SHORT.values():
                raise ReportError(f"unknown model kind {kind!r} in cell {key!r}")
            if compression not in COMPRESSIONS:
                raise ReportError(f"unknown compression {compression!r} in cell {key!r}")
            if not isinstance(report, EvaluationReport):
                raise ReportError(f"cell {key!r} does not hold an evaluation report")
            if MODEL_KIND_SHORT[report.config.model_kind] != kind:
                raise ReportError(
                    f"cell {key!r} holds a {report.config.model_kind} report"
                )
            if report.config.use_pca != (compression == "pca"):
                raise ReportError(f"cell {key!r} compression does not match its report")
            seeds.add(report.config.seed)
            row_counts.add(report.n_rows)
        if len(seeds) > 1:
            raise ReportError(f"cells mix master seeds: {sorted(seeds)}")
        if len(row_counts) > 1:
            raise ReportError(f"cells mix datasets: row counts {sorted(row_counts)}")
        object.__setattr__(self, "cells", dict(self.cells))

    @property
    def embeddings(self) -> "list[str]":
        seen = []
        for embedding, _, _ in self.cells:
            if embedding not in seen:
                seen.append(embedding)
        return seen


def _table_rows(grid: BenchmarkGrid) -> "list[list[str]]":
    rows = []
    for kind in ("1c", "2c"):
        for embedding in grid.embeddings:
            orig = grid.cells.get((embedding, kind, "orig"))
            pca = grid.cells.get((embedding, kind, "pca"))
            if orig is None and pca is None:
                continue
            row = [f"{kind} {embedding}"]
            for attr, pct in (
                ("accuracy", True),
                ("kappa", False),
                ("auc_roc", False),
                ("auc_prc", False),
            ):
                for report in (orig, pca):
                    if report is None:
                        row.append(MISSING_CELL)
                    elif pct:
                        row.append(format_percent(getattr(report, attr)))
                    else:
                        row.append(format_metric(getattr(report, attr)))
            rows.append(row)
    return rows


def render_results_table(grid: BenchmarkGrid, format: str = "markdown") -> str:
    """One summary table; rows are '1c/2c embedding' methods."""
    if not grid.cells:
        raise ReportError("empty grid")
    if format not in ("markdown", "csv"):
        raise ReportError(f"unknown table format {format!r}")
    rows = _table_rows(grid)
    if format == "csv":
        header = ["method"] + [key for _, key in _COLUMNS]
        lines = [",".join(header)]
        lines += [",".join(row) for row in rows]
        return "\n".join(lines) + "\n"
    header = ["Method"] + [label for label, _ in _COLUMNS]
    lines = ["| " + " | ".join(header) + " |"]
    lines.append("|" + "|".join([" --- "] * len(header)) + "|")
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


# fixed 800x600 canvas; plot area in pixel coordinates
_PLOT = {"x0": 60.0, "y0": 560.0, "w": 720.0, "h": 540.0}


def _px(x: float) -> str:
    return f"{_PLOT['x0'] + x * _PLOT['w']:.2f}"


def _py(y: float) -> str:
    return f"{_PLOT['y0'] - y * _PLOT['h']:.2f}"


def _svg_curve(points, title: str, x_label: str, y_label: str, reference) -> str:
    """Single-curve SVG; reference is ('diagonal', None) or ('hline', y)."""
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" '
        'viewBox="0 0 800 600">',
        '<rect x="0" y="0" width="800" height="600" fill="white"/>',
        f'<rect x="{_px(0)}" y="{_py(1)}" width="{_PLOT["w"]:.2f}" '
        f'height="{_PLOT["h"]:.2f}" fill="none" stroke="black"/>',
    ]
    for i in range(5):
        t = i / 4.0
        parts.append(
            f'<line x1="{_px(t)}" y1="{_py(0)}" x2="{_px(t)}" y2="{float(_py(0)) + 6:.2f}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{_px(t)}" y="{float(_py(0)) + 22:.2f}" font-size="14" '
            f'text-anchor="middle">{t:g}</text>'
        )
        parts.append(
            f'<line x1="{_px(0)}" y1="{_py(t)}" x2="{float(_px(0)) - 6:.2f}" y2="{_py(t)}" '
            'stroke="black"/>'
        )
        parts.append(
            f'<text x="{float(_px(0)) - 10:.2f}" y="{float(_py(t)) + 5:.2f}" font-size="14" '
            f'text-anchor="end">{t:g}</text>'
        )
    parts.append(
        f'<text x="{_px(0.5)}" y="595" font-size="16" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{_py(0.5)}" font-size="16" text-anchor="middle" '
        f'transform="rotate(-90 16 {_py(0.5)})">{y_label}</text>'
    )
    kind, level = reference
    if kind == "diagonal":
        parts.append(
            f'<line x1="{_px(0)}" y1="{_py(0)}" x2="{_px(1)}" y2="{_py(1)}" '
            'stroke="gray" stroke-dasharray="6 4"/>'
        )
    else:
        parts.append(
            f'<line x1="{_px(0)}" y1="{_py(level)}" x2="{_px(1)}" y2="{_py(level)}" '
            'stroke="gray" stroke-dasharray="6 4"/>'
        )
    coords = " ".join(f"{_px(x)},{_py(y)}" for x, y in points)
    parts.append(f'<polyline points="{coords}" fill="none" stroke="#1f6fb2" stroke-width="2"/>')
    parts.append(f'<text x="{_px(0.5)}" y="{float(_py(1)) - 4:.2f}" font-size="16" '
                 f'text-anchor="middle">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _write_curve_csv(points, path) -> None:
    with atomic_write(path, "w") as fh:
        fh.write("threshold,x,y\n")
        for threshold, x, y in points:
            fh.write(f"{threshold!r},{x!r},{y!r}\n")


def emit_curves(report: EvaluationReport, out_dir) -> "dict[str, Path]":
    """Write roc/prc CSV and SVG files; returns name -> path.

    ROC gets the chance diagonal as reference, PRC a horizontal line at
    the positive prevalence.
    """
    if not report.roc_points or not report.prc_points:
        raise ReportError("report has no curve points")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    prevalence = float(report.pooled_labels.mean())

    files = {
        "roc_csv": out / "roc.csv",
        "prc_csv": out / "prc.csv",
        "roc_svg": out / "roc.svg",
        "prc_svg": out / "prc.svg",
    }
    _write_curve_csv(report.roc_points, files["roc_csv"])
    _write_curve_csv(report.prc_points, files["prc_csv"])

    roc_xy = [(x, y) for _, x, y in report.roc_points]
    prc_xy = [(x, y) for _, x, y in report.prc_points]
    with atomic_write(files["roc_svg"], "w") as fh:
        fh.write(
            _svg_curve(
                roc_xy,
                f"ROC (AUC {format_metric(report.auc_roc)})",
                "False positive rate",
                "True positive rate",
                ("diagonal", None),
            )
        )
    with atomic_write(files["prc_svg"], "w") as fh:
        fh.write(
            _svg_curve(
                prc_xy,
                f"PRC (AUC {format_metric(report.auc_prc)})",
                "Recall",
                "Precision",
                ("hline", prevalence),
            )
        )
    return files
