"""Bit-exact embedding matrix file format (EMB1).

Layout: 4 magic bytes ``EMB1``; little-endian unsigned 32-bit header
length; UTF-8 JSON header with keys ``model``, ``dim``, ``count``,
``dtype`` (always ``"f32"``), ``corpus``, ``corpus_checksum``; then the
row-major little-endian float32 payload of ``count * dim`` values.

The header's ``corpus_checksum`` is a 64-bit FNV-1a hash of the
concatenated normalized corpus texts in record order, rendered as 16
lowercase hex digits. It binds an embedding file to the exact corpus it
was encoded from, so row misalignment is caught at load time rather
than surfacing as silently wrong scores.

This file format is the only contract between this package and
whatever tool produces the embeddings; both sides must treat it as
frozen.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._io import atomic_write

__all__ = [
    "BadMagicError",
    "ChecksumMismatchError",
    "CountMismatchError",
    "DimensionMismatchError",
    "EmbeddingMatrix",
    "EmbeddingStoreError",
    "HeaderError",
    "InvalidValueError",
    "PayloadLengthError",
    "corpus_checksum",
    "fnv1a_64",
    "read_embeddings",
    "write_embeddings",
]

MAGIC = b"EMB1"

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64_MASK = 0xFFFFFFFFFFFFFFFF


class EmbeddingStoreError(Exception):
    """Base class for embedding file errors."""


class BadMagicError(EmbeddingStoreError):
    pass


class HeaderError(EmbeddingStoreError):
    pass


class PayloadLengthError(EmbeddingStoreError):
    pass


class ChecksumMismatchError(EmbeddingStoreError):
    pass


class CountMismatchError(EmbeddingStoreError):
    pass


class DimensionMismatchError(EmbeddingStoreError):
    pass


class InvalidValueError(EmbeddingStoreError):
    """NaN or Inf entries in the matrix."""


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _U64_MASK
    return h


def corpus_checksum(texts) -> str:
    """FNV-1a over the concatenated texts, as 16 lowercase hex digits."""
    return format(fnv1a_64("".join(texts).encode("utf-8")), "016x")


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    data: np.ndarray
    model_name: str
    corpus_name: str
    corpus_checksum: str

    def __eq__(self, other):
        if not isinstance(other, EmbeddingMatrix):
            return NotImplemented
        return (
            self.model_name == other.model_name
            and self.corpus_name == other.corpus_name
            and self.corpus_checksum == other.corpus_checksum
            and self.data.shape == other.data.shape
            and self.data.tobytes() == other.data.tobytes()
        )

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float32)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"data must be a nonempty 2-D matrix, got shape {arr.shape}")
        object.__setattr__(self, "data", arr)

    @property
    def count(self) -> int:
        return int(self.data.shape[0])

    @property
    def dim(self) -> int:
        return int(self.data.shape[1])


def _require_finite(data: np.ndarray, context: str) -> None:
    if not np.isfinite(data).all():
        bad = int(np.count_nonzero(~np.isfinite(data)))
        raise InvalidValueError(f"{context}: {bad} NaN/Inf entries in embedding matrix")


def write_embeddings(matrix: EmbeddingMatrix, path) -> None:
    """Write an EMB1 file; refuses non-finite matrices."""
    _require_finite(matrix.data, str(path))
    header = {
        "model": matrix.model_name,
        "dim": matrix.dim,
        "count": matrix.count,
        "dtype": "f32",
        "corpus": matrix.corpus_name,
        "corpus_checksum": matrix.corpus_checksum,
    }
    header_bytes = json.dumps(header, ensure_ascii=False, separators=(",", ":")).encode(
        "utf-8"
    )
    payload = matrix.data.astype("<f4", copy=False).tobytes(order="C")
    with atomic_write(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(header_bytes)))
        fh.write(header_bytes)
        fh.write(payload)


def read_embeddings(
    path,
    expected_dim=None,
    expected_corpus=None,
) -> EmbeddingMatrix:
    """Read and validate an EMB1 file.

    expected_dim: reject files whose dim differs (DimensionMismatchError).
    expected_corpus: a LabeledCorpus whose record count and normalized-
    text checksum the file must match (CountMismatchError /
    ChecksumMismatchError).
    """
    path = Path(path)
    blob = path.read_bytes()
    if len(blob) < 4 or blob[:4] != MAGIC:
        raise BadMagicError(f"{path.name}: not an EMB1 file")
    if len(blob) < 8:
        raise HeaderError(f"{path.name}: truncated before header length")
    (header_len,) = struct.unpack_from("<I", blob, 4)
    header_end = 8 + header_len
    if len(blob) < header_end:
        raise HeaderError(f"{path.name}: truncated header")
    try:
        header = json.loads(blob[8:header_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise HeaderError(f"{path.name}: malformed header: {exc}") from exc
    for key in ("model", "dim", "count", "dtype", "corpus", "corpus_checksum"):
        if key not in header:
            raise HeaderError(f"{path.name}: header missing key {key!r}")
    if header["dtype"] != "f32":
        raise HeaderError(f"{path.name}: unsupported dtype {header['dtype']!r}")
    dim, count = header["dim"], header["count"]
    if not isinstance(dim, int) or not isinstance(count, int) or dim < 1 or count < 1:
        raise HeaderError(f"{path.name}: dim/count must be positive integers")

    payload = blob[header_end:]
    expected_bytes = count * dim * 4
    if len(payload) != expected_bytes:
        raise PayloadLengthError(
            f"{path.name}: payload length mismatch: header implies "
            f"{expected_bytes} bytes, found {len(payload)}"
        )
    data = np.frombuffer(payload, dtype="<f4").reshape(count, dim)
    data = np.ascontiguousarray(data, dtype=np.float32)
    _require_finite(data, path.name)

    if expected_dim is not None and dim != expected_dim:
        raise DimensionMismatchError(
            f"{path.name}: file has dim {dim}, pipeline expects {expected_dim}"
        )
    if expected_corpus is not None:
        if count != len(expected_corpus):
            raise CountMismatchError(
                f"{path.name}: file has {count} rows, corpus "
                f"{expected_corpus.name!r} has {len(expected_corpus)} records"
            )
        want = corpus_checksum(expected_corpus.texts)
        if header["corpus_checksum"] != want:
            raise ChecksumMismatchError(
                f"{path.name}: corpus checksum {header['corpus_checksum']} does not "
                f"match {want} computed from corpus {expected_corpus.name!r}"
            )
    return EmbeddingMatrix(
        data=data,
        model_name=header["model"],
        corpus_name=header["corpus"],
        corpus_checksum=header["corpus_checksum"],
    )
