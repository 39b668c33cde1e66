"""Two-class gradient-boosted decision trees with weighted logistic loss.

Training follows the usual histogram GBDT recipe: feature values are
quantized once on the fit part into at most ``histogram_bins`` quantile
bins; each boosting iteration grows one greedy depth-wise binary tree
on the (gradient, hessian) pairs of the weighted logistic loss, with
Newton leaf values ``-learning_rate * G / (H + lambda_l2)`` (the
learning rate is folded into the stored leaf values). Per-node
histograms for the larger child are derived from the parent by
subtraction, so only the smaller child is re-accumulated.

Class imbalance is handled by ``scale_pos_weight``: positive rows carry
weight ``n_negative / n_positive`` computed on the fit part of a seeded
stratified 80/20 split. The held-out 20% drives early stopping: when
validation AUC has not strictly improved for ``early_stop_patience``
consecutive iterations, training stops and the ensemble is truncated to
the best-AUC iteration.

All arithmetic is deterministic for a fixed seed: identical inputs
produce bit-identical models and predictions.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ._io import atomic_write
from .metrics import auc_roc

__all__ = [
    "GbdtConfig",
    "GbdtError",
    "GbdtModel",
    "Tree",
    "gbdt_predict_proba",
    "gbdt_predict_raw",
    "gbdt_train",
    "load_gbdt",
    "logistic_loss_gradients",
    "save_gbdt",
]


class GbdtError(ValueError):
    pass


@dataclass(frozen=True)
class GbdtConfig:
    max_iterations: int = 500
    learning_rate: float = 0.05
    max_depth: int = 8
    early_stop_patience: int = 30
    internal_split_fraction: float = 0.2
    seed: int = 0
    histogram_bins: int = 255
    min_samples_leaf: int = 20
    lambda_l2: float = 3.0
    # None (default) recomputes n_neg/n_pos on the fit part of every
    # training call; a float pins it explicitly
    scale_pos_weight: "float | None" = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise GbdtError("max_iterations must be >= 1")
        if not 0.0 < self.learning_rate <= 1.0:
            raise GbdtError("learning_rate must be in (0, 1]")
        if self.max_depth < 1:
            raise GbdtError("max_depth must be >= 1")
        if self.early_stop_patience < 1:
            raise GbdtError("early_stop_patience must be >= 1")
        if not 0.0 < self.internal_split_fraction < 1.0:
            raise GbdtError("internal_split_fraction must be in (0, 1)")
        if not 2 <= self.histogram_bins <= 255:
            raise GbdtError("histogram_bins must be in [2, 255]")
        if self.min_samples_leaf < 1:
            raise GbdtError("min_samples_leaf must be >= 1")
        if self.lambda_l2 < 0.0:
            raise GbdtError("lambda_l2 must be >= 0")
        if self.scale_pos_weight is not None and self.scale_pos_weight <= 0:
            raise GbdtError("scale_pos_weight must be positive")


@dataclass(frozen=True, eq=False)
class Tree:
    feature: np.ndarray  # int32; -1 marks a leaf
    threshold: np.ndarray  # float64; split sends x <= threshold left
    left: np.ndarray  # int32 child ids
    right: np.ndarray
    value: np.ndarray  # float64; leaf additive value, 0 on internal nodes

    def depth(self) -> int:
        depths = {0: 0}
        best = 0
        for nid in range(len(self.feature)):
            d = depths[nid]
            best = max(best, d)
            if self.feature[nid] >= 0:
                depths[int(self.left[nid])] = d + 1
                depths[int(self.right[nid])] = d + 1
        return best


@dataclass(frozen=True, eq=False)
class GbdtModel:
    base_score: float
    trees: tuple
    n_features: int
    best_iteration: int
    validation_history: tuple  # of (iteration, validation AUC)
    fit_loss_history: tuple  # weighted logloss on the fit part, per iteration
    config: GbdtConfig
    scale_pos_weight_used: float


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    expx = np.exp(x[~pos])
    out[~pos] = expx / (1.0 + expx)
    return out


def logistic_loss_gradients(y, raw_scores, scale_pos_weight: float):
    """First and second derivatives of the weighted logistic loss.

    Row weight is scale_pos_weight for positives and 1 for negatives;
    gradient = w * (p - y), hessian = w * p * (1 - p) with p = sigmoid(raw).
    """
    y = np.asarray(y, dtype=np.float64)
    raw = np.asarray(raw_scores, dtype=np.float64)
    if not np.isfinite(raw).all():
        raise GbdtError("raw_scores must be finite")
    w = np.where(y == 1.0, float(scale_pos_weight), 1.0)
    p = _sigmoid(raw)
    return w * (p - y), w * p * (1.0 - p)


def _weighted_logloss(y, raw, scale_pos_weight: float) -> float:
    w = np.where(y == 1.0, float(scale_pos_weight), 1.0)
    # log(1 + e^raw) - y*raw, computed stably
    per_row = np.maximum(raw, 0.0) + np.log1p(np.exp(-np.abs(raw))) - y * raw
    return float((w * per_row).sum() / w.sum())


def _quantile_bins(X: np.ndarray, n_bins: int):
    """Per-feature quantile boundaries and integer codes.

    code(v) counts boundaries strictly below v, so ``code <= c`` is
    exactly ``v <= boundaries[c]``.
    """
    n, d = X.shape
    probs = np.linspace(0.0, 1.0, n_bins + 1)[1:-1]
    boundaries = []
    codes = np.empty((n, d), dtype=np.int32)
    for j in range(d):
        col = X[:, j]
        b = np.unique(np.quantile(col, probs))
        # boundaries at or beyond the column max create empty right
        # partitions; cheaper to drop them here
        b = b[b < col.max()] if b.size else b
        boundaries.append(b)
        codes[:, j] = np.searchsorted(b, col, side="left")
    return boundaries, codes


class _TreeBuilder:
    def __init__(self):
        self.feature = []
        self.threshold = []
        self.left = []
        self.right = []
        self.value = []

    def add(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def freeze(self) -> Tree:
        return Tree(
            feature=np.array(self.feature, dtype=np.int32),
            threshold=np.array(self.threshold, dtype=np.float64),
            left=np.array(self.left, dtype=np.int32),
            right=np.array(self.right, dtype=np.int32),
            value=np.array(self.value, dtype=np.float64),
        )


def _node_histograms(codes, offsets, g, h, idx, n_slots):
    d = codes.shape[1]
    flat = (codes[idx] + offsets).ravel()
    cnt = np.bincount(flat, minlength=n_slots).reshape(d, -1)
    gh = np.bincount(flat, weights=np.repeat(g[idx], d), minlength=n_slots).reshape(
        d, -1
    )
    hh = np.bincount(flat, weights=np.repeat(h[idx], d), minlength=n_slots).reshape(
        d, -1
    )
    return cnt, gh, hh


def _best_split(cnt, gh, hh, min_samples_leaf: int, lambda_l2: float):
    """Best (feature, bin) by Newton gain; first maximum wins ties."""
    g_total = gh[0].sum()
    h_total = hh[0].sum()
    c_total = cnt[0].sum()
    GL = np.cumsum(gh[:, :-1], axis=1)
    HL = np.cumsum(hh[:, :-1], axis=1)
    CL = np.cumsum(cnt[:, :-1], axis=1)
    GR = g_total - GL
    HR = h_total - HL
    CR = c_total - CL
    with np.errstate(divide="ignore", invalid="ignore"):
        gain = (
            GL * GL / (HL + lambda_l2)
            + GR * GR / (HR + lambda_l2)
            - g_total * g_total / (h_total + lambda_l2)
        )
    gain[(CL < min_samples_leaf) | (CR < min_samples_leaf)] = -np.inf
    gain[~np.isfinite(gain)] = -np.inf
    best_flat = int(np.argmax(gain))
    best_gain = gain.ravel()[best_flat]
    if best_gain <= 0.0:
        return None
    j, c = divmod(best_flat, gain.shape[1])
    return j, c


def _grow_tree(codes, boundaries, offsets, n_slots, g, h, cfg: GbdtConfig):
    """One greedy depth-wise tree; returns (tree, leaf assignment pairs)."""
    builder = _TreeBuilder()
    root = builder.add()
    all_rows = np.arange(codes.shape[0])
    leaf_updates = []
    stack = [(root, all_rows, _node_histograms(codes, offsets, g, h, all_rows, n_slots), 0)]
    while stack:
        nid, idx, (cnt, gh, hh), depth = stack.pop()
        split = None
        if depth < cfg.max_depth and idx.size >= 2 * cfg.min_samples_leaf:
            split = _best_split(cnt, gh, hh, cfg.min_samples_leaf, cfg.lambda_l2)
        if split is None:
            g_sum = gh[0].sum()
            h_sum = hh[0].sum()
            builder.value[nid] = -cfg.learning_rate * g_sum / (h_sum + cfg.lambda_l2)
            leaf_updates.append((nid, idx))
            continue
        j, c = split
        builder.feature[nid] = j
        builder.threshold[nid] = float(boundaries[j][c])
        left_id = builder.add()
        right_id = builder.add()
        builder.left[nid] = left_id
        builder.right[nid] = right_id

        mask = codes[idx, j] <= c
        left_idx = idx[mask]
        right_idx = idx[~mask]
        # accumulate the smaller child, derive the sibling by subtraction
        if left_idx.size <= right_idx.size:
            small_id, small_idx, big_id, big_idx = left_id, left_idx, right_id, right_idx
        else:
            small_id, small_idx, big_id, big_idx = right_id, right_idx, left_id, left_idx
        small_hist = _node_histograms(codes, offsets, g, h, small_idx, n_slots)
        big_hist = (cnt - small_hist[0], gh - small_hist[1], hh - small_hist[2])
        stack.append((small_id, small_idx, small_hist, depth + 1))
        stack.append((big_id, big_idx, big_hist, depth + 1))
    return builder.freeze(), leaf_updates


def _tree_predict(tree: Tree, X: np.ndarray) -> np.ndarray:
    out = np.zeros(X.shape[0], dtype=np.float64)
    stack = [(0, np.arange(X.shape[0]))]
    while stack:
        nid, idx = stack.pop()
        if idx.size == 0:
            continue
        f = int(tree.feature[nid])
        if f < 0:
            out[idx] = tree.value[nid]
            continue
        mask = X[idx, f] <= tree.threshold[nid]
        stack.append((int(tree.left[nid]), idx[mask]))
        stack.append((int(tree.right[nid]), idx[~mask]))
    return out


def _stratified_holdout(y: np.ndarray, fraction: float, seed: int):
    """Seeded stratified split; returns (fit_idx, val_idx) in stable order."""
    rng = np.random.default_rng(seed)
    val_parts = []
    for cls in (0, 1):
        cls_idx = np.flatnonzero(y == cls)
        n_val = int(np.floor(cls_idx.size * fraction))
        val_parts.append(rng.permutation(cls_idx)[:n_val])
    val_idx = np.sort(np.concatenate(val_parts))
    val_mask = np.zeros(y.size, dtype=bool)
    val_mask[val_idx] = True
    return np.flatnonzero(~val_mask), val_idx


def gbdt_train(X, y, config: GbdtConfig) -> GbdtModel:
    """Boosted trees on (X, y) with an internal early-stopping holdout."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.size:
        raise GbdtError(f"bad shapes: X {X.shape}, y {y.shape}")
    if X.shape[0] < 10:
        raise GbdtError(f"need at least 10 rows, got {X.shape[0]}")
    if not np.isin(y, (0, 1)).all():
        raise GbdtError("y must be binary 0/1")
    y = y.astype(np.int64)
    if y.min() == y.max():
        raise GbdtError("single-class y: scale_pos_weight undefined")

    fit_idx, val_idx = _stratified_holdout(
        y, config.internal_split_fraction, config.seed
    )
    X_fit, y_fit = X[fit_idx], y[fit_idx]
    X_val, y_val = X[val_idx], y[val_idx]
    for part, name in ((y_fit, "fit"), (y_val, "validation")):
        if np.count_nonzero(part == 1) < 2 or np.count_nonzero(part == 0) < 2:
            raise GbdtError(f"fewer than 2 rows per class in the {name} part")

    n_pos = int(np.count_nonzero(y_fit == 1))
    n_neg = int(np.count_nonzero(y_fit == 0))
    spw = (
        float(config.scale_pos_weight)
        if config.scale_pos_weight is not None
        else n_neg / n_pos
    )
    base_score = float(np.log((spw * n_pos) / n_neg))

    boundaries, codes = _quantile_bins(X_fit, config.histogram_bins)
    d = X.shape[1]
    offsets = np.arange(d, dtype=np.int32) * np.int32(config.histogram_bins)
    n_slots = d * config.histogram_bins

    yf = y_fit.astype(np.float64)
    raw_fit = np.full(y_fit.size, base_score, dtype=np.float64)
    raw_val = np.full(y_val.size, base_score, dtype=np.float64)

    trees = []
    history = []
    fit_losses = []
    best_auc = -np.inf
    best_iteration = 0
    stale = 0
    for iteration in range(1, config.max_iterations + 1):
        g, h = logistic_loss_gradients(yf, raw_fit, spw)
        tree, leaf_updates = _grow_tree(
            codes, boundaries, offsets, n_slots, g, h, config
        )
        for nid, idx in leaf_updates:
            raw_fit[idx] += tree.value[nid]
        raw_val += _tree_predict(tree, X_val)
        trees.append(tree)

        fit_losses.append(_weighted_logloss(yf, raw_fit, spw))
        val_auc = auc_roc(raw_val, y_val)
        history.append((iteration, val_auc))
        if val_auc > best_auc:
            best_auc = val_auc
            best_iteration = iteration
            stale = 0
        else:
            stale += 1
            if stale >= config.early_stop_patience:
                break

    return GbdtModel(
        base_score=base_score,
        trees=tuple(trees[:best_iteration]),
        n_features=d,
        best_iteration=best_iteration,
        validation_history=tuple(history),
        fit_loss_history=tuple(fit_losses),
        config=config,
        scale_pos_weight_used=spw,
    )


def gbdt_predict_raw(model: GbdtModel, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise GbdtError(
            f"X must be 2-D with {model.n_features} columns, got shape {X.shape}"
        )
    raw = np.full(X.shape[0], model.base_score, dtype=np.float64)
    for tree in model.trees:
        raw += _tree_predict(tree, X)
    return raw


def gbdt_predict_proba(model: GbdtModel, X) -> np.ndarray:
    """Positive-class probability, sigmoid of the additive raw score."""
    return _sigmoid(gbdt_predict_raw(model, X))


def save_gbdt(model: GbdtModel, path) -> None:
    doc = {
        "kind": "gbdt",
        "base_score": model.base_score,
        "n_features": model.n_features,
        "best_iteration": model.best_iteration,
        "scale_pos_weight_used": model.scale_pos_weight_used,
        "validation_history": [[i, a] for i, a in model.validation_history],
        "fit_loss_history": list(model.fit_loss_history),
        "config": asdict(model.config),
        "trees": [
            {
                "feature": t.feature.tolist(),
                "threshold": t.threshold.tolist(),
                "left": t.left.tolist(),
                "right": t.right.tolist(),
                "value": t.value.tolist(),
            }
            for t in model.trees
        ],
    }
    with atomic_write(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_gbdt(path) -> GbdtModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GbdtError(f"{Path(path).name}: malformed JSON: {exc}") from exc
    if doc.get("kind") != "gbdt":
        raise GbdtError(f"{Path(path).name}: not a GBDT model file")
    trees = tuple(
        Tree(
            feature=np.array(t["feature"], dtype=np.int32),
            threshold=np.array(t["threshold"], dtype=np.float64),
            left=np.array(t["left"], dtype=np.int32),
            right=np.array(t["right"], dtype=np.int32),
            value=np.array(t["value"], dtype=np.float64),
        )
        for t in doc["trees"]
    )
    return GbdtModel(
        base_score=float(doc["base_score"]),
        trees=trees,
        n_features=int(doc["n_features"]),
        best_iteration=int(doc["best_iteration"]),
        validation_history=tuple((i, a) for i, a in doc["validation_history"]),
        fit_loss_history=tuple(doc["fit_loss_history"]),
        config=GbdtConfig(**doc["config"]),
        scale_pos_weight_used=float(doc["scale_pos_weight_used"]),
    )
