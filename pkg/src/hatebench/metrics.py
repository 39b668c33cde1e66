"""Ranking and confusion-matrix metrics for binary detectors.

All functions take a score vector (higher = more positive) and a binary
label vector. AUC ROC uses the rank formulation of the Wilcoxon
Mann-Whitney statistic with half credit for ties; AUC PRC is average
precision with tied scores processed as one block. The equal-error-rate
threshold is selected over midpoints between adjacent distinct scores
plus infinite sentinels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _as_score_label_arrays(scores, labels) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=np.float64)
    y = np.asarray(labels)
    if s.ndim != 1 or y.ndim != 1 or s.shape[0] != y.shape[0]:
        raise ValueError(
            f"scores and labels must be 1-d and equal length, got {s.shape} vs {y.shape}"
        )
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be binary 0/1")
    y = y.astype(np.int64)
    if y.min() == y.max():
        raise ValueError("both classes must be present")
    return s, y


def _tied_ranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks with ties assigned the group average rank."""
    order = np.argsort(values, kind="mergesort")
    sorted_vals = values[order]
    new_group = np.r_[True, sorted_vals[1:] != sorted_vals[:-1]]
    group_id = np.cumsum(new_group) - 1
    counts = np.bincount(group_id)
    starts = np.cumsum(counts) - counts
    group_rank = starts + (counts + 1) / 2.0
    ranks = np.empty_like(values)
    ranks[order] = group_rank[group_id]
    return ranks


def auc_roc(scores, labels) -> float:
    """Probability that a random positive outscores a random negative.

    Equals pair counting with 0.5 credit for tied pairs; computed by
    sorting via tied ranks, exact in float64 for any realistic n.
    """
    s, y = _as_score_label_arrays(scores, labels)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    ranks = _tied_ranks(s)
    pos_rank_sum = float(ranks[y == 1].sum())
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def _descending_blocks(s: np.ndarray, y: np.ndarray):
    """Distinct score values descending with cumulative tp/fp at block ends."""
    order = np.argsort(-s, kind="mergesort")
    s_sorted = s[order]
    y_sorted = y[order]
    block_end = np.r_[s_sorted[1:] != s_sorted[:-1], True]
    tp_cum = np.cumsum(y_sorted)[block_end]
    fp_cum = np.cumsum(1 - y_sorted)[block_end]
    thresholds = s_sorted[block_end]
    return thresholds, tp_cum, fp_cum


def auc_prc(scores, labels) -> float:
    """Average precision with tied scores processed as a single block.

    Precision is evaluated at each block end and weighted by the recall
    increment over the block, so an uninformative (fully tied) ranker
    scores exactly the positive prevalence.
    """
    s, y = _as_score_label_arrays(scores, labels)
    n_pos = int(y.sum())
    _, tp_cum, fp_cum = _descending_blocks(s, y)
    precision = tp_cum / (tp_cum + fp_cum)
    recall_inc = np.diff(np.r_[0, tp_cum]) / n_pos
    return float(np.sum(precision * recall_inc))


def roc_curve_points(scores, labels) -> list[tuple[float, float, float]]:
    """ROC polyline as (threshold, fpr, tpr), thresholds descending.

    The first point is the (inf, 0, 0) sentinel; tied scores contribute a
    single point, so trapezoidal re-integration over the returned points
    reproduces :func:`auc_roc` (diagonal tie segments included).
    """
    s, y = _as_score_label_arrays(scores, labels)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    thresholds, tp_cum, fp_cum = _descending_blocks(s, y)
    points = [(math.inf, 0.0, 0.0)]
    for t, tp, fp in zip(thresholds, tp_cum, fp_cum):
        points.append((float(t), float(fp / n_neg), float(tp / n_pos)))
    return points


def prc_curve_points(scores, labels) -> list[tuple[float, float, float]]:
    """PRC polyline as (threshold, recall, precision), recall ascending.

    Starts at the conventional (inf, 0, 1) anchor; block ends only, so the
    x column is non-decreasing.
    """
    s, y = _as_score_label_arrays(scores, labels)
    n_pos = int(y.sum())
    thresholds, tp_cum, fp_cum = _descending_blocks(s, y)
    points = [(math.inf, 0.0, 1.0)]
    for t, tp, fp in zip(thresholds, tp_cum, fp_cum):
        points.append((float(t), float(tp / n_pos), float(tp / (tp + fp))))
    return points


def eer_threshold(scores, labels) -> float:
    """Threshold where sensitivity and specificity are closest.

    Candidates are midpoints between adjacent distinct scores plus -inf
    and +inf sentinels; a row is predicted positive when score >=
    threshold. Ties break by higher accuracy, then by lower threshold.
    """
    s, y = _as_score_label_arrays(scores, labels)
    n = s.size
    n_pos = int(y.sum())
    n_neg = n - n_pos

    distinct = np.unique(s)
    if distinct.size > 1:
        midpoints = (distinct[:-1] + distinct[1:]) / 2.0
    else:
        midpoints = np.empty(0)
    candidates = np.r_[-np.inf, midpoints, np.inf]

    # tp[i]: positives with score >= candidates[i]; no score ever equals a
    # midpoint, so >= and > coincide except at the sentinels.
    tp = n_pos - np.searchsorted(np.sort(s[y == 1]), candidates, side="left")
    tn = np.searchsorted(np.sort(s[y == 0]), candidates, side="left")

    # |sens - spec| and accuracy compared in exact integer arithmetic over
    # the common denominators, so genuine ties are broken by the stated
    # rules rather than by float rounding
    gap_scaled = np.abs(tp * n_neg - tn * n_pos)
    correct = tp + tn
    best = np.lexsort((candidates, -correct, gap_scaled))[0]
    return float(candidates[best])


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def confusion_at_threshold(scores, labels, threshold: float) -> ConfusionMatrix:
    """Hard decisions at a threshold: positive iff score >= threshold."""
    s, y = _as_score_label_arrays(scores, labels)
    pred = s >= threshold
    pos = y == 1
    return ConfusionMatrix(
        tp=int(np.sum(pred & pos)),
        tn=int(np.sum(~pred & ~pos)),
        fp=int(np.sum(pred & ~pos)),
        fn=int(np.sum(~pred & pos)),
    )


def metrics_from_confusion(c: ConfusionMatrix) -> tuple[float, float]:
    """Overall accuracy and chance-corrected kappa from raw counts.

    Kappa is (p0 - pe) / (1 - pe) with p0 the accuracy and pe the
    marginal chance-agreement probability; defined as 0 when pe = 1.
    """
    n = c.total
    if n <= 0:
        raise ValueError("confusion matrix is empty")
    tp, tn, fp, fn = int(c.tp), int(c.tn), int(c.fp), int(c.fn)
    accuracy = (tp + tn) / n
    # kappa as a ratio of exact integers (both sides scaled by n^2), so
    # round numbers like 0.6 come out exact instead of off by one ulp
    marginal = (tp + fp) * (tp + fn) + (tn + fn) * (tn + fp)
    denominator = n * n - marginal
    kappa = 0.0 if denominator == 0 else (n * (tp + tn) - marginal) / denominator
    return accuracy, kappa
