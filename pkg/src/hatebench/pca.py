"""PCA fit/transform for compressing embeddings per training split.

Fitting runs a thin SVD of the row-centered data (not an explicit
covariance eigendecomposition) for numerical stability; the covariance
convention is 1/(n-1). Component signs are fixed deterministically by
making each component's largest-magnitude coordinate positive, so
repeated fits on the same data are bit-identical across platforms.

Models serialize to a small binary cache format: magic ``PCA1``, a
little-endian u32 header length, a UTF-8 JSON header {"k","d","dtype"},
then float32 payload rows: mean (d), components (k*d, row-major),
explained variance (k).
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._io import atomic_write

__all__ = ["PcaError", "PcaModel", "load_pca", "pca_fit", "pca_transform", "save_pca"]

PCA_MAGIC = b"PCA1"


class PcaError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        comps = np.asarray(self.components, dtype=np.float64)
        ev = np.asarray(self.explained_variance, dtype=np.float64)
        if mean.ndim != 1 or comps.ndim != 2 or ev.ndim != 1:
            raise PcaError("mean must be 1-D, components 2-D, explained_variance 1-D")
        if comps.shape != (ev.shape[0], mean.shape[0]):
            raise PcaError(
                f"shape mismatch: components {comps.shape}, mean {mean.shape}, "
                f"explained_variance {ev.shape}"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "explained_variance", ev)

    def __eq__(self, other):
        if not isinstance(other, PcaModel):
            return NotImplemented
        return (
            self.mean.shape == other.mean.shape
            and self.components.shape == other.components.shape
            and self.mean.tobytes() == other.mean.tobytes()
            and self.components.tobytes() == other.components.tobytes()
            and self.explained_variance.tobytes() == other.explained_variance.tobytes()
        )

    @property
    def k(self) -> int:
        return int(self.components.shape[0])

    @property
    def d(self) -> int:
        return int(self.components.shape[1])


def pca_fit(X, k: int) -> PcaModel:
    """Fit a rank-k PCA on the rows of X.

    Requires n >= 2 and k <= min(n - 1, d). Zero-variance input yields
    a valid model with zero explained variance.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise PcaError(f"X must be 2-D, got shape {X.shape}")
    n, d = X.shape
    if n < 2:
        raise PcaError(f"need at least 2 rows to fit, got {n}")
    limit = min(n - 1, d)
    if not 1 <= k <= limit:
        raise PcaError(f"k must be in [1, min(n-1, d)] = [1, {limit}], got {k}")

    mean = X.mean(axis=0)
    centered = X - mean
    _, singular_values, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:k].copy()
    explained_variance = (singular_values[:k] ** 2) / (n - 1)

    # sign convention: largest-magnitude coordinate of each component
    # positive; argmax takes the first maximum, so ties are deterministic
    anchor = np.argmax(np.abs(components), axis=1)
    flip = components[np.arange(k), anchor] < 0
    components[flip] *= -1.0

    return PcaModel(
        mean=mean, components=components, explained_variance=explained_variance
    )


def pca_transform(model: PcaModel, X) -> np.ndarray:
    """Project rows of X onto the model's components: (X - mean) @ Vᵀ."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.d:
        raise PcaError(
            f"X must be 2-D with {model.d} columns, got shape {X.shape}"
        )
    return (X - model.mean) @ model.components.T


def save_pca(model: PcaModel, path) -> None:
    header = {"k": model.k, "d": model.d, "dtype": "f32"}
    header_bytes = json.dumps(header, separators=(",", ":")).encode("utf-8")
    with atomic_write(path, "wb") as fh:
        fh.write(PCA_MAGIC)
        fh.write(struct.pack("<I", len(header_bytes)))
        fh.write(header_bytes)
        fh.write(model.mean.astype("<f4").tobytes())
        fh.write(model.components.astype("<f4").tobytes(order="C"))
        fh.write(model.explained_variance.astype("<f4").tobytes())


def load_pca(path) -> PcaModel:
    blob = Path(path).read_bytes()
    if len(blob) < 8 or blob[:4] != PCA_MAGIC:
        raise PcaError(f"{Path(path).name}: not a PCA1 file")
    (header_len,) = struct.unpack_from("<I", blob, 4)
    try:
        header = json.loads(blob[8 : 8 + header_len].decode("utf-8"))
        k, d = int(header["k"]), int(header["d"])
    except (KeyError, ValueError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise PcaError(f"{Path(path).name}: malformed header: {exc}") from exc
    payload = blob[8 + header_len :]
    expected = (d + k * d + k) * 4
    if len(payload) != expected:
        raise PcaError(
            f"{Path(path).name}: payload length mismatch: expected {expected} "
            f"bytes, found {len(payload)}"
        )
    values = np.frombuffer(payload, dtype="<f4")
    mean = values[:d]
    components = values[d : d + k * d].reshape(k, d)
    explained_variance = values[d + k * d :]
    return PcaModel(
        mean=mean, components=components, explained_variance=explained_variance
    )
