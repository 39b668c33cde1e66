"""Leakage-safe stratified k-fold cross-validation with pooled metrics.

Every fold fits its own models strictly on training rows: PCA (when
enabled) is fit per fold and applied to both sides, the one-class
detector sees positive training rows only, and the two-class classifier
sees the full training part. Held-out scores are pooled in original row
order and all metrics are computed once over the pooled vector
(micro-averaging); nothing is averaged per fold.

One-class scores are oriented as target-class likelihood before pooling
(1 minus the rescaled outlier probability) so that higher always means
"more likely positive" for both model kinds.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, replace

import numpy as np

from ._io import atomic_write
from .embedstore import EmbeddingMatrix, fnv1a_64
from .gbdt import GbdtConfig, gbdt_predict_proba, gbdt_train
from .hbos import hbos_fit, hbos_probability, hbos_raw_scores
from .metrics import (
    ConfusionMatrix,
    auc_prc,
    auc_roc,
    confusion_at_threshold,
    eer_threshold,
    metrics_from_confusion,
    prc_curve_points,
    roc_curve_points,
)
from .pca import pca_fit, pca_transform

ONE_CLASS_HBOS = "one_class_hbos"
TWO_CLASS_GBDT = "two_class_gbdt"
MODEL_KINDS = (ONE_CLASS_HBOS, TWO_CLASS_GBDT)


class CrossValidationError(ValueError):
    pass


def derive_seed(master_seed: int, label: str) -> int:
    """Named 64-bit sub-seed so one master seed drives every RNG."""
    return fnv1a_64(f"{master_seed}:{label}".encode("utf-8"))


@dataclass(frozen=True)
class CvConfig:
    k_folds: int = 10
    seed: int = 0
    model_kind: str = TWO_CLASS_GBDT
    use_pca: bool = False
    pca_k: int = 64

    def __post_init__(self):
        if self.k_folds < 2:
            raise CrossValidationError("k_folds must be >= 2")
        if self.model_kind not in MODEL_KINDS:
            raise CrossValidationError(
                f"model_kind must be one of {MODEL_KINDS}, got {self.model_kind!r}"
            )
        if self.pca_k < 1:
            raise CrossValidationError("pca_k must be >= 1")


@dataclass(frozen=True, eq=False)
class FoldPlan:
    """Fold index per row; folds partition the rows."""

    assignment: np.ndarray
    n_folds: int

    def __post_init__(self):
        a = np.ascontiguousarray(self.assignment, dtype=np.int64)
        if a.ndim != 1 or a.size == 0:
            raise CrossValidationError(f"assignment must be a nonempty vector, got {a.shape}")
        if self.n_folds < 2:
            raise CrossValidationError("n_folds must be >= 2")
        if a.min() < 0 or a.max() >= self.n_folds:
            raise CrossValidationError("fold indices out of range")
        if np.bincount(a, minlength=self.n_folds).min() == 0:
            raise CrossValidationError("every fold must be non-empty")
        object.__setattr__(self, "assignment", a)

    def __eq__(self, other):
        if not isinstance(other, FoldPlan):
            return NotImplemented
        return self.n_folds == other.n_folds and np.array_equal(
            self.assignment, other.assignment
        )

    @property
    def n_rows(self) -> int:
        return int(self.assignment.size)

    def fold_sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.n_folds)

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignment != fold)


def _binary_labels(labels) -> np.ndarray:
    y = np.asarray(labels)
    if y.ndim != 1:
        raise CrossValidationError(f"labels must be a 1-d vector, got shape {y.shape}")
    if not np.isin(y, (0, 1)).all():
        raise CrossValidationError("labels must be binary 0/1")
    return y.astype(np.int64)


def stratified_fold_plan(labels, k: int, seed: int) -> FoldPlan:
    """Deterministic stratified partition into k folds.

    Each class is shuffled and dealt out in per-fold quotas of floor or
    ceil of its even share; the leftover slots water-fill the currently
    smallest folds (seeded tie-break), which keeps overall fold sizes
    within one of each other as well.
    """
    y = _binary_labels(labels)
    if k < 2:
        raise CrossValidationError("k must be >= 2")
    rng = np.random.default_rng(seed)
    assignment = np.full(y.size, -1, dtype=np.int64)
    planned = np.zeros(k, dtype=np.int64)
    for cls in (0, 1):
        members = np.flatnonzero(y == cls)
        if members.size < k:
            raise CrossValidationError(
                f"class {cls} has {members.size} members, fewer than k={k}"
            )
        base, extra = divmod(members.size, k)
        quota = np.full(k, base, dtype=np.int64)
        tiebreak = rng.permutation(k)
        if extra:
            order = np.lexsort((tiebreak, planned))
            quota[order[:extra]] += 1
        planned += quota
        shuffled = rng.permutation(members)
        stops = np.cumsum(quota)
        for f in range(k):
            assignment[shuffled[stops[f] - quota[f] : stops[f]]] = f
    return FoldPlan(assignment=assignment, n_folds=k)


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    """Pooled cross-validation outputs plus every derived metric.

    All metrics are recomputable from (pooled_scores, pooled_labels);
    the stored values match such a recomputation exactly.
    """

    pooled_scores: np.ndarray
    pooled_labels: np.ndarray
    fold_assignment: np.ndarray
    roc_points: tuple
    prc_points: tuple
    auc_roc: float
    auc_prc: float
    eer_threshold: float
    confusion: ConfusionMatrix
    accuracy: float
    kappa: float
    config: CvConfig

    def __post_init__(self):
        object.__setattr__(
            self, "pooled_scores", np.ascontiguousarray(self.pooled_scores, dtype=np.float64)
        )
        object.__setattr__(
            self, "pooled_labels", np.ascontiguousarray(self.pooled_labels, dtype=np.int64)
        )
        object.__setattr__(
            self, "fold_assignment", np.ascontiguousarray(self.fold_assignment, dtype=np.int64)
        )

    def __eq__(self, other):
        if not isinstance(other, EvaluationReport):
            return NotImplemented
        return (
            np.array_equal(self.pooled_scores, other.pooled_scores)
            and np.array_equal(self.pooled_labels, other.pooled_labels)
            and np.array_equal(self.fold_assignment, other.fold_assignment)
            and self.roc_points == other.roc_points
            and self.prc_points == other.prc_points
            and self.auc_roc == other.auc_roc
            and self.auc_prc == other.auc_prc
            and self.eer_threshold == other.eer_threshold
            and self.confusion == other.confusion
            and self.accuracy == other.accuracy
            and self.kappa == other.kappa
            and self.config == other.config
        )

    @property
    def n_rows(self) -> int:
        return int(self.pooled_scores.size)


def _report_from_pooled(scores, labels, folds, config: CvConfig) -> EvaluationReport:
    threshold = eer_threshold(scores, labels)
    confusion = confusion_at_threshold(scores, labels, threshold)
    accuracy, kappa = metrics_from_confusion(confusion)
    return EvaluationReport(
        pooled_scores=scores,
        pooled_labels=labels,
        fold_assignment=folds,
        roc_points=tuple(roc_curve_points(scores, labels)),
        prc_points=tuple(prc_curve_points(scores, labels)),
        auc_roc=auc_roc(scores, labels),
        auc_prc=auc_prc(scores, labels),
        eer_threshold=threshold,
        confusion=confusion,
        accuracy=accuracy,
        kappa=kappa,
        config=config,
    )


def run_cv(
    embeddings,
    labels,
    config: CvConfig,
    hbos_n_bins: int = 10,
    hbos_contamination: float = 0.01,
    gbdt_config: "GbdtConfig | None" = None,
    on_fold=None,
) -> EvaluationReport:
    """Cross-validate one detector configuration and pool the outputs.

    on_fold, when given, is called after each fold as
    on_fold(fold_index, pca_model_or_None, detector_model); it exists so
    callers (and leakage tests) can observe the per-fold fitted models.
    GBDT internal split seeds are derived per fold from config.seed.
    """
    X = embeddings.data if isinstance(embeddings, EmbeddingMatrix) else np.asarray(embeddings)
    if X.ndim != 2:
        raise CrossValidationError(f"embeddings must be 2-d, got shape {X.shape}")
    y = _binary_labels(labels)
    if y.size != X.shape[0]:
        raise CrossValidationError(
            f"labels length {y.size} does not match embedding count {X.shape[0]}"
        )
    if y.min() == y.max():
        raise CrossValidationError("both classes must be present")

    plan = stratified_fold_plan(y, config.k_folds, derive_seed(config.seed, "fold-plan"))
    pooled = np.full(y.size, np.nan)
    for f in range(config.k_folds):
        train_idx = plan.train_indices(f)
        test_idx = plan.test_indices(f)
        try:
            X_train, X_test = X[train_idx], X[test_idx]
            pca_model = None
            if config.use_pca:
                pca_model = pca_fit(X_train, config.pca_k)
                X_train = pca_transform(pca_model, X_train)
                X_test = pca_transform(pca_model, X_test)
            if config.model_kind == ONE_CLASS_HBOS:
                detector = hbos_fit(
                    X_train[y[train_idx] == 1],
                    n_bins=hbos_n_bins,
                    contamination=hbos_contamination,
                )
                outlier_prob = hbos_probability(
                    hbos_raw_scores(detector, X_test), compressed=config.use_pca
                )
                fold_scores = 1.0 - outlier_prob
            else:
                base = gbdt_config if gbdt_config is not None else GbdtConfig()
                fold_cfg = replace(base, seed=derive_seed(config.seed, f"gbdt-split-fold-{f}"))
                detector = gbdt_train(X_train, y[train_idx], fold_cfg)
                fold_scores = gbdt_predict_proba(detector, X_test)
        except CrossValidationError:
            raise
        except Exception as exc:
            raise CrossValidationError(f"fold {f}: {exc}") from exc
        # partition sanity: no row scored twice
        assert np.isnan(pooled[test_idx]).all()
        pooled[test_idx] = fold_scores
        if on_fold is not None:
            on_fold(f, pca_model, detector)
    assert not np.isnan(pooled).any()
    return _report_from_pooled(pooled, y, plan.assignment, config)


def report_to_dict(report: EvaluationReport) -> dict:
    return {
        "kind": "cv_report",
        "config": asdict(report.config),
        "n_rows": report.n_rows,
        "auc_roc": report.auc_roc,
        "auc_prc": report.auc_prc,
        "eer_threshold": report.eer_threshold,
        "confusion": asdict(report.confusion),
        "accuracy": report.accuracy,
        "kappa": report.kappa,
        "pooled_scores": report.pooled_scores.tolist(),
        "pooled_labels": report.pooled_labels.tolist(),
        "fold_assignment": report.fold_assignment.tolist(),
        "roc_points": [list(p) for p in report.roc_points],
        "prc_points": [list(p) for p in report.prc_points],
    }


def report_from_dict(doc: dict) -> EvaluationReport:
    try:
        if doc.get("kind") != "cv_report":
            raise CrossValidationError(f"not a cv report: kind={doc.get('kind')!r}")
        return EvaluationReport(
            pooled_scores=np.asarray(doc["pooled_scores"], dtype=np.float64),
            pooled_labels=np.asarray(doc["pooled_labels"], dtype=np.int64),
            fold_assignment=np.asarray(doc["fold_assignment"], dtype=np.int64),
            roc_points=tuple(tuple(p) for p in doc["roc_points"]),
            prc_points=tuple(tuple(p) for p in doc["prc_points"]),
            auc_roc=float(doc["auc_roc"]),
            auc_prc=float(doc["auc_prc"]),
            eer_threshold=float(doc["eer_threshold"]),
            confusion=ConfusionMatrix(**doc["confusion"]),
            accuracy=float(doc["accuracy"]),
            kappa=float(doc["kappa"]),
            config=CvConfig(**doc["config"]),
        )
    except KeyError as exc:
        raise CrossValidationError(f"cv report missing field {exc}") from exc


def save_report(report: EvaluationReport, path) -> None:
    """JSON dump; float repr round-trips, so loading reproduces values exactly."""
    with atomic_write(path, "w") as fh:
        json.dump(report_to_dict(report), fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def load_report(path) -> EvaluationReport:
    with open(path, encoding="utf-8") as fh:
        return report_from_dict(json.load(fh))


def save_scores_csv(report: EvaluationReport, path, ids=None) -> None:
    """Per-row pooled outputs as CSV: id, label, score, fold."""
    if ids is None:
        ids = [str(i) for i in range(report.n_rows)]
    if len(ids) != report.n_rows:
        raise CrossValidationError(
            f"ids length {len(ids)} does not match report rows {report.n_rows}"
        )
    with atomic_write(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "label", "score", "fold"])
        for i in range(report.n_rows):
            writer.writerow(
                [
                    ids[i],
                    int(report.pooled_labels[i]),
                    repr(float(report.pooled_scores[i])),
                    int(report.fold_assignment[i]),
                ]
            )
