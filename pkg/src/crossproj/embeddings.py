"""Precomputed word-piece embedding store and the CPEB binary format."""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass
from typing import IO

import numpy as np

from .corpus import Sentence
from .errors import (
    BadMagic,
    DimMismatch,
    IndexOutOfRange,
    TokenMapOutOfRange,
    TruncatedFile,
)

MAGIC = b"CPEB"
VERSION = 1


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Per-word-piece vectors for one sentence plus the word-piece→token map."""

    sentence_id: str
    vectors: np.ndarray           # (n, dim) float32
    wp_to_token: tuple[int, ...]  # length n, non-decreasing, gap-free from 0

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    @property
    def n_wordpieces(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def n_tokens(self) -> int:
        return self.wp_to_token[-1] + 1


def _validate_matrix(m: EmbeddingMatrix) -> EmbeddingMatrix:
    n = m.n_wordpieces
    if n == 0:
        raise TokenMapOutOfRange(f"{m.sentence_id}: empty word-piece list")
    if m.wp_to_token[0] != 0:
        raise TokenMapOutOfRange(f"{m.sentence_id}: token map must start at 0")
    for prev, cur in zip(m.wp_to_token, m.wp_to_token[1:]):
        if cur < prev or cur > prev + 1:
            raise TokenMapOutOfRange(
                f"{m.sentence_id}: token map must be non-decreasing without gaps")
    if not np.isfinite(m.vectors).all():
        raise TokenMapOutOfRange(f"{m.sentence_id}: non-finite vector entries")
    zero_rows = np.where(~m.vectors.any(axis=1))[0]
    if zero_rows.size:
        raise TokenMapOutOfRange(f"{m.sentence_id}: all-zero vector at row {zero_rows[0]}")
    return m


def token_vectors(m: EmbeddingMatrix, token_index: int) -> np.ndarray:
    """All word-piece rows of one token, in file order; never empty."""
    if not 0 <= token_index < m.n_tokens:
        raise IndexOutOfRange(f"token index {token_index} out of range for {m.n_tokens} tokens")
    rows = [i for i, t in enumerate(m.wp_to_token) if t == token_index]
    return m.vectors[rows]


def check_matches_sentence(m: EmbeddingMatrix, sentence: Sentence) -> None:
    if m.n_tokens != len(sentence):
        raise TokenMapOutOfRange(
            f"{m.sentence_id}: token map covers {m.n_tokens} tokens, sentence has {len(sentence)}")


# -- binary IO ---------------------------------------------------------------

def _read_exact(fh: IO[bytes], size: int) -> bytes:
    buf = fh.read(size)
    if len(buf) != size:
        raise TruncatedFile(f"expected {size} bytes, got {len(buf)}")
    return buf


def _read_matrix(fh: IO[bytes], sentence_id: str, dim: int) -> EmbeddingMatrix:
    (n,) = struct.unpack("<I", _read_exact(fh, 4))
    idx = struct.unpack(f"<{n}I", _read_exact(fh, 4 * n)) if n else ()
    raw = _read_exact(fh, 4 * n * dim)
    vectors = np.frombuffer(raw, dtype="<f4").reshape(n, dim).copy()
    return _validate_matrix(EmbeddingMatrix(sentence_id, vectors, tuple(int(i) for i in idx)))


def load_embeddings(stream: bytes | IO[bytes],
                    expected_dim: int | None = None,
                    ) -> dict[str, tuple[EmbeddingMatrix, EmbeddingMatrix]]:
    """Load a CPEB store: sentence-pair id → (source, target) matrices."""
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    magic = stream.read(4)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    version, dim, count = struct.unpack("<III", _read_exact(stream, 12))
    if version != VERSION:
        raise BadMagic(f"unsupported version {version}")
    if dim == 0:
        raise DimMismatch(expected_dim or 1, 0)
    if expected_dim is not None and dim != expected_dim:
        raise DimMismatch(expected_dim, dim)

    store: dict[str, tuple[EmbeddingMatrix, EmbeddingMatrix]] = {}
    for _ in range(count):
        (id_len,) = struct.unpack("<H", _read_exact(stream, 2))
        sentence_id = _read_exact(stream, id_len).decode("utf-8")
        src = _read_matrix(stream, sentence_id, dim)
        tgt = _read_matrix(stream, sentence_id, dim)
        store[sentence_id] = (src, tgt)
    if stream.read(1):
        raise TruncatedFile("trailing bytes after declared pair count")
    return store


def _write_matrix(out: IO[bytes], m: EmbeddingMatrix, dim: int) -> None:
    if m.dim != dim:
        raise DimMismatch(dim, m.dim)
    _validate_matrix(m)
    out.write(struct.pack("<I", m.n_wordpieces))
    out.write(struct.pack(f"<{m.n_wordpieces}I", *m.wp_to_token))
    out.write(np.ascontiguousarray(m.vectors, dtype="<f4").tobytes())


def write_embeddings(store: dict[str, tuple[EmbeddingMatrix, EmbeddingMatrix]],
                     dim: int) -> bytes:
    """Serialize a store to CPEB bytes, pairs in insertion order."""
    out = io.BytesIO()
    out.write(MAGIC)
    out.write(struct.pack("<III", VERSION, dim, len(store)))
    for sentence_id, (src, tgt) in store.items():
        encoded = sentence_id.encode("utf-8")
        if len(encoded) > 0xFFFF:
            raise TruncatedFile(f"sentence id too long: {len(encoded)} bytes")
        out.write(struct.pack("<H", len(encoded)))
        out.write(encoded)
        _write_matrix(out, src, dim)
        _write_matrix(out, tgt, dim)
    return out.getvalue()
