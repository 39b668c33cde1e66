import json
import struct

import numpy as np
import pytest

from hatebench.corpus import CorpusRecord, LabeledCorpus
from hatebench.embedstore import (
    BadMagicError,
    ChecksumMismatchError,
    CountMismatchError,
    DimensionMismatchError,
    EmbeddingMatrix,
    HeaderError,
    InvalidValueError,
    PayloadLengthError,
    corpus_checksum,
    fnv1a_64,
    read_embeddings,
    write_embeddings,
)


def make_matrix(n=5, d=4, model="m", corpus="c", checksum="0" * 16, seed=0):
    rng = np.random.default_rng(seed)
    return EmbeddingMatrix(
        data=rng.standard_normal((n, d)).astype(np.float32),
        model_name=model,
        corpus_name=corpus,
        corpus_checksum=checksum,
    )


class TestChecksum:
    # published FNV-1a 64-bit reference vectors
    def test_fnv_empty(self):
        assert fnv1a_64(b"") == 0xCBF29CE484222325

    def test_fnv_a(self):
        assert fnv1a_64(b"a") == 0xAF63DC4C8601EC8C

    def test_fnv_foobar(self):
        assert fnv1a_64(b"foobar") == 0x85944171F73967E8

    def test_corpus_checksum_hex_format(self):
        cs = corpus_checksum(["labas", "žodis"])
        assert len(cs) == 16
        assert cs == cs.lower()
        int(cs, 16)

    def test_concatenation_order_matters(self):
        assert corpus_checksum(["ab", "c"]) == corpus_checksum(["a", "bc"])
        assert corpus_checksum(["ab", "c"]) != corpus_checksum(["c", "ab"])


class TestFormat:
    def test_file_layout_matches_manual_bytes(self, tmp_path):
        header = {
            "model": "m",
            "dim": 2,
            "count": 1,
            "dtype": "f32",
            "corpus": "c",
            "corpus_checksum": "0" * 16,
        }
        header_bytes = json.dumps(header, separators=(",", ":")).encode()
        manual = (
            b"EMB1"
            + struct.pack("<I", len(header_bytes))
            + header_bytes
            + struct.pack("<2f", 1.5, -2.0)
        )
        p = tmp_path / "manual.emb"
        p.write_bytes(manual)
        matrix = read_embeddings(p)
        assert matrix.data.tolist() == [[1.5, -2.0]]

        out = tmp_path / "rewritten.emb"
        write_embeddings(matrix, out)
        assert out.read_bytes() == manual

    def test_zero_matrix_payload_bytes(self, tmp_path):
        matrix = EmbeddingMatrix(
            data=np.zeros((2, 3), dtype=np.float32),
            model_name="z",
            corpus_name="c",
            corpus_checksum="0" * 16,
        )
        p = tmp_path / "z.emb"
        write_embeddings(matrix, p)
        blob = p.read_bytes()
        (header_len,) = struct.unpack_from("<I", blob, 4)
        payload = blob[8 + header_len :]
        assert len(payload) == 24
        assert payload == b"\x00" * 24

    def test_header_contains_dim(self, tmp_path):
        matrix = make_matrix(n=3, d=1024, model="e5")
        p = tmp_path / "e5.emb"
        write_embeddings(matrix, p)
        blob = p.read_bytes()
        (header_len,) = struct.unpack_from("<I", blob, 4)
        header = json.loads(blob[8 : 8 + header_len])
        assert header["dim"] == 1024
        assert header["model"] == "e5"
        assert header["dtype"] == "f32"

    def test_round_trip_bit_identical(self, tmp_path):
        matrix = make_matrix(n=5, d=256, seed=42)
        p = tmp_path / "rt.emb"
        write_embeddings(matrix, p)
        loaded = read_embeddings(p)
        assert loaded.data.tobytes() == matrix.data.tobytes()
        assert loaded == matrix

    def test_payload_is_little_endian(self, tmp_path):
        matrix = EmbeddingMatrix(
            data=np.array([[1.0]], dtype=np.float32),
            model_name="m",
            corpus_name="c",
            corpus_checksum="0" * 16,
        )
        p = tmp_path / "le.emb"
        write_embeddings(matrix, p)
        assert p.read_bytes()[-4:] == b"\x00\x00\x80\x3f"


class TestErrors:
    def test_bad_magic(self, tmp_path):
        p = tmp_path / "bad.emb"
        p.write_bytes(b"NOPE" + b"\x00" * 20)
        with pytest.raises(BadMagicError):
            read_embeddings(p)

    def test_truncated_header(self, tmp_path):
        p = tmp_path / "short.emb"
        p.write_bytes(b"EMB1" + struct.pack("<I", 100) + b"{}")
        with pytest.raises(HeaderError):
            read_embeddings(p)

    def test_malformed_header_json(self, tmp_path):
        bad = b"{not json"
        p = tmp_path / "json.emb"
        p.write_bytes(b"EMB1" + struct.pack("<I", len(bad)) + bad)
        with pytest.raises(HeaderError):
            read_embeddings(p)

    def test_missing_header_key(self, tmp_path):
        header = json.dumps({"model": "m", "dim": 2}).encode()
        p = tmp_path / "keys.emb"
        p.write_bytes(b"EMB1" + struct.pack("<I", len(header)) + header)
        with pytest.raises(HeaderError, match="missing key"):
            read_embeddings(p)

    def test_truncated_payload(self, tmp_path):
        matrix = make_matrix(n=4, d=8)
        p = tmp_path / "t.emb"
        write_embeddings(matrix, p)
        blob = p.read_bytes()
        p.write_bytes(blob[:-5])
        with pytest.raises(PayloadLengthError, match="length mismatch"):
            read_embeddings(p)

    def test_nan_write_refused(self, tmp_path):
        data = np.ones((2, 2), dtype=np.float32)
        data[0, 1] = np.nan
        matrix = EmbeddingMatrix(
            data=data, model_name="m", corpus_name="c", corpus_checksum="0" * 16
        )
        with pytest.raises(InvalidValueError):
            write_embeddings(matrix, tmp_path / "nan.emb")

    def test_inf_read_refused(self, tmp_path):
        header = json.dumps(
            {
                "model": "m",
                "dim": 1,
                "count": 1,
                "dtype": "f32",
                "corpus": "c",
                "corpus_checksum": "0" * 16,
            }
        ).encode()
        p = tmp_path / "inf.emb"
        p.write_bytes(
            b"EMB1"
            + struct.pack("<I", len(header))
            + header
            + struct.pack("<f", np.inf)
        )
        with pytest.raises(InvalidValueError):
            read_embeddings(p)

    def test_dimension_mismatch(self, tmp_path):
        matrix = make_matrix(n=3, d=256, model="potion")
        p = tmp_path / "potion.emb"
        write_embeddings(matrix, p)
        with pytest.raises(DimensionMismatchError):
            read_embeddings(p, expected_dim=1024)
        assert read_embeddings(p, expected_dim=256).dim == 256

    def test_bad_dtype(self, tmp_path):
        header = json.dumps(
            {
                "model": "m",
                "dim": 1,
                "count": 1,
                "dtype": "f64",
                "corpus": "c",
                "corpus_checksum": "0" * 16,
            }
        ).encode()
        p = tmp_path / "dtype.emb"
        p.write_bytes(b"EMB1" + struct.pack("<I", len(header)) + header + b"\x00" * 8)
        with pytest.raises(HeaderError, match="dtype"):
            read_embeddings(p)


class TestCorpusBinding:
    def corpus(self, texts):
        return LabeledCorpus(
            records=tuple(
                CorpusRecord(id=str(i), text=t, label=0) for i, t in enumerate(texts)
            ),
            name="bind",
        )

    def test_checksum_match_accepted(self, tmp_path):
        corpus = self.corpus(["a", "b", "c"])
        matrix = EmbeddingMatrix(
            data=np.zeros((3, 2), dtype=np.float32),
            model_name="m",
            corpus_name="bind",
            corpus_checksum=corpus_checksum(corpus.texts),
        )
        p = tmp_path / "ok.emb"
        write_embeddings(matrix, p)
        assert read_embeddings(p, expected_corpus=corpus).count == 3

    def test_checksum_mismatch_rejected(self, tmp_path):
        corpus = self.corpus(["a", "b", "c"])
        matrix = EmbeddingMatrix(
            data=np.zeros((3, 2), dtype=np.float32),
            model_name="m",
            corpus_name="bind",
            corpus_checksum=corpus_checksum(["different", "texts", "!"]),
        )
        p = tmp_path / "bad.emb"
        write_embeddings(matrix, p)
        with pytest.raises(ChecksumMismatchError):
            read_embeddings(p, expected_corpus=corpus)

    def test_count_mismatch_rejected(self, tmp_path):
        corpus = self.corpus(["a", "b"])
        matrix = EmbeddingMatrix(
            data=np.zeros((3, 2), dtype=np.float32),
            model_name="m",
            corpus_name="bind",
            corpus_checksum=corpus_checksum(corpus.texts),
        )
        p = tmp_path / "count.emb"
        write_embeddings(matrix, p)
        with pytest.raises(CountMismatchError):
            read_embeddings(p, expected_corpus=corpus)


class TestMatrixType:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            EmbeddingMatrix(
                data=np.zeros(3, dtype=np.float32),
                model_name="m",
                corpus_name="c",
                corpus_checksum="0" * 16,
            )

    def test_dtype_coerced_to_f32(self):
        matrix = EmbeddingMatrix(
            data=np.ones((2, 2), dtype=np.float64),
            model_name="m",
            corpus_name="c",
            corpus_checksum="0" * 16,
        )
        assert matrix.data.dtype == np.float32
        assert matrix.count == 2 and matrix.dim == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
