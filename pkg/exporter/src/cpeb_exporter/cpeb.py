"""CPEB binary writer.

Layout: magic "CPEB"; u32 LE version (1); u32 LE dim; u32 LE pair count;
per pair: u16 LE id length + UTF-8 id; then for source and target in turn:
u32 LE word-piece count n, n u32 LE token indices, n x dim float32 LE rows.
"""

import struct
from typing import IO, Sequence

import numpy as np

MAGIC = b"CPEB"
VERSION = 1


def write_header(out: IO[bytes], dim: int, count: int) -> None:
    out.write(MAGIC)
    out.write(struct.pack("<III", VERSION, dim, count))


def write_block(out: IO[bytes], wp_to_token: Sequence[int], vectors: np.ndarray) -> None:
    n = len(wp_to_token)
    if vectors.shape[0] != n:
        raise ValueError(f"{n} map entries for {vectors.shape[0]} vectors")
    out.write(struct.pack("<I", n))
    out.write(struct.pack(f"<{n}I", *wp_to_token))
    out.write(np.ascontiguousarray(vectors, dtype="<f4").tobytes())


def write_pair_id(out: IO[bytes], pair_id: str) -> None:
    encoded = pair_id.encode("utf-8")
    if len(encoded) > 0xFFFF:
        raise ValueError(f"pair id too long ({len(encoded)} bytes)")
    out.write(struct.pack("<H", len(encoded)))
    out.write(encoded)
