"""Histogram-Based Outlier Score one-class detector.

Fit builds one equal-width histogram per feature over the training
min/max, with heights normalized so the per-feature maximum is exactly
1 (empty bins are floored at 1e-12). A row's raw score sums
log10(1/height) of the bin each coordinate falls into, so 0 means
"every coordinate in a maximal-density bin" and higher means more
anomalous. Test values outside the training range clamp into the
nearest edge bin rather than being treated as automatic outliers.

The decision threshold is the (1 - contamination) empirical quantile
(higher interpolation) of raw training scores, which guarantees at most
ceil(contamination * n) training rows score strictly above it. Raw
scores convert to [0, 1] probabilities by dividing by 10000 (original
features) or 100 (PCA-compressed features) and clamping; both divisors
are fixed conventions of the modeled pipeline.

A constant training feature yields a degenerate all-ones histogram and
contributes 0 to every score.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from ._io import atomic_write

__all__ = [
    "HbosError",
    "HbosModel",
    "hbos_fit",
    "hbos_probability",
    "hbos_raw_score",
    "hbos_raw_scores",
    "load_hbos",
    "save_hbos",
]

HEIGHT_FLOOR = 1e-12
ORIGINAL_DIVISOR = 10000.0
COMPRESSED_DIVISOR = 100.0


class HbosError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HbosModel:
    bin_edges: np.ndarray  # (d, n_bins + 1), strictly ascending per row
    heights: np.ndarray  # (d, n_bins), in (0, 1], per-row max = 1
    n_bins: int
    contamination: float
    decision_threshold: float

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=np.float64)
        heights = np.asarray(self.heights, dtype=np.float64)
        if edges.ndim != 2 or heights.ndim != 2:
            raise HbosError("bin_edges and heights must be 2-D")
        if edges.shape != (heights.shape[0], heights.shape[1] + 1):
            raise HbosError(
                f"shape mismatch: edges {edges.shape}, heights {heights.shape}"
            )
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "heights", heights)

    def __eq__(self, other):
        if not isinstance(other, HbosModel):
            return NotImplemented
        return (
            self.n_bins == other.n_bins
            and self.contamination == other.contamination
            and self.decision_threshold == other.decision_threshold
            and self.bin_edges.shape == other.bin_edges.shape
            and self.bin_edges.tobytes() == other.bin_edges.tobytes()
            and self.heights.tobytes() == other.heights.tobytes()
        )

    @property
    def feature_count(self) -> int:
        return int(self.bin_edges.shape[0])


def hbos_fit(X, n_bins: int = 10, contamination: float = 0.01) -> HbosModel:
    """Fit per-feature histograms on rows of the target class only."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise HbosError(f"X must be a nonempty 2-D matrix, got shape {X.shape}")
    n, d = X.shape
    if n_bins < 1:
        raise HbosError(f"n_bins must be positive, got {n_bins}")
    if n < n_bins:
        raise HbosError(f"need at least n_bins={n_bins} rows, got {n}")
    if not 0.0 < contamination <= 0.5:
        raise HbosError(f"contamination must be in (0, 0.5], got {contamination}")

    edges = np.empty((d, n_bins + 1), dtype=np.float64)
    heights = np.empty((d, n_bins), dtype=np.float64)
    for j in range(d):
        col = X[:, j]
        lo, hi = float(col.min()), float(col.max())
        if lo == hi:
            # constant feature: degenerate full histogram, contributes 0
            edges[j] = np.linspace(lo - 0.5, lo + 0.5, n_bins + 1)
            heights[j] = 1.0
            continue
        counts, edges[j] = np.histogram(col, bins=n_bins, range=(lo, hi))
        heights[j] = np.maximum(counts / counts.max(), HEIGHT_FLOOR)

    unthresholded = HbosModel(
        bin_edges=edges,
        heights=heights,
        n_bins=n_bins,
        contamination=contamination,
        decision_threshold=0.0,
    )
    train_scores = hbos_raw_scores(unthresholded, X)
    threshold = float(np.quantile(train_scores, 1.0 - contamination, method="higher"))
    return replace(unthresholded, decision_threshold=threshold)


def hbos_raw_scores(model: HbosModel, X) -> np.ndarray:
    """Raw outlier score for each row of X (vectorized)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.feature_count:
        raise HbosError(
            f"X must be 2-D with {model.feature_count} columns, got shape {X.shape}"
        )
    scores = np.zeros(X.shape[0], dtype=np.float64)
    log_heights = np.log10(model.heights)
    for j in range(model.feature_count):
        idx = np.searchsorted(model.bin_edges[j], X[:, j], side="right") - 1
        np.clip(idx, 0, model.n_bins - 1, out=idx)
        scores -= log_heights[j, idx]
    return scores


def hbos_raw_score(model: HbosModel, x) -> float:
    """Raw outlier score of a single d-vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise HbosError(f"x must be 1-D, got shape {x.shape}")
    return float(hbos_raw_scores(model, x[None, :])[0])


def hbos_probability(raw, compressed: bool):
    """Rescale raw scores to [0, 1]: raw/10000 original, raw/100 PCA."""
    divisor = COMPRESSED_DIVISOR if compressed else ORIGINAL_DIVISOR
    scaled = np.clip(np.asarray(raw, dtype=np.float64) / divisor, 0.0, 1.0)
    return float(scaled) if np.isscalar(raw) else scaled


def save_hbos(model: HbosModel, path) -> None:
    """JSON serialization, human-inspectable; floats survive exactly."""
    doc = {
        "kind": "hbos",
        "n_bins": model.n_bins,
        "contamination": model.contamination,
        "decision_threshold": model.decision_threshold,
        "bin_edges": model.bin_edges.tolist(),
        "heights": model.heights.tolist(),
    }
    with atomic_write(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_hbos(path) -> HbosModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise HbosError(f"{Path(path).name}: malformed JSON: {exc}") from exc
    if doc.get("kind") != "hbos":
        raise HbosError(f"{Path(path).name}: not an HBOS model file")
    return HbosModel(
        bin_edges=np.array(doc["bin_edges"], dtype=np.float64),
        heights=np.array(doc["heights"], dtype=np.float64),
        n_bins=int(doc["n_bins"]),
        contamination=float(doc["contamination"]),
        decision_threshold=float(doc["decision_threshold"]),
    )
