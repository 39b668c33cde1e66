"""Multilingual hate-speech detection benchmark toolkit.

Pipeline stages: deterministic text normalization, binary embedding
ingestion (EMB1 files), per-fold PCA compression, one-class histogram
outlier scoring, two-class gradient-boosted classification, and pooled
stratified cross-validation evaluation with ROC/PRC metrics and an
equal-error-rate operating point.
"""

__version__ = "0.1.0"
