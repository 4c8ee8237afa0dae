import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossproj.embeddings import (
    EmbeddingMatrix,
    load_embeddings,
    token_vectors,
    write_embeddings,
)
from crossproj.errors import BadMagic, DimMismatch, IndexOutOfRange, TokenMapOutOfRange, TruncatedFile
from helpers import random_store
from oracles import read_cpeb_reference


def minimal_file(dim=4) -> bytes:
    out = bytearray()
    out += b"CPEB"
    out += struct.pack("<III", 1, dim, 1)
    out += struct.pack("<H", 2) + b"p0"
    for _ in range(2):  # source and target blocks
        out += struct.pack("<I", 2)
        out += struct.pack("<2I", 0, 1)
        out += struct.pack(f"<{2 * dim}f", *range(1, 2 * dim + 1))
    return bytes(out)


def test_minimal_file_loads():
    store = load_embeddings(minimal_file())
    src, tgt = store["p0"]
    assert src.vectors.shape == (2, 4)
    assert src.wp_to_token == (0, 1)
    assert tgt.vectors.shape == (2, 4)


def test_truncated_file():
    data = minimal_file()
    with pytest.raises(TruncatedFile):
        load_embeddings(data[:-3])


def test_trailing_garbage_rejected():
    with pytest.raises(TruncatedFile):
        load_embeddings(minimal_file() + b"x")


def test_bad_magic():
    with pytest.raises(BadMagic):
        load_embeddings(b"NOPE" + minimal_file()[4:])


def test_expected_dim_checked():
    with pytest.raises(DimMismatch):
        load_embeddings(minimal_file(dim=4), expected_dim=8)


def test_token_map_must_be_gapfree():
    data = bytearray(minimal_file())
    # patch the source token map [0, 1] -> [0, 2]
    offset = 4 + 12 + 2 + 2 + 4
    struct.pack_into("<2I", data, offset, 0, 2)
    with pytest.raises(TokenMapOutOfRange):
        load_embeddings(bytes(data))


def test_zero_vector_rejected():
    data = bytearray(minimal_file())
    offset = 4 + 12 + 2 + 2 + 4 + 8
    struct.pack_into("<4f", data, offset, 0, 0, 0, 0)
    with pytest.raises(TokenMapOutOfRange):
        load_embeddings(bytes(data))


def test_token_vectors_basic():
    vectors = np.arange(12, dtype=np.float32).reshape(3, 4) + 1
    m = EmbeddingMatrix("s", vectors, (0, 0, 1))
    np.testing.assert_array_equal(token_vectors(m, 0), vectors[:2])
    np.testing.assert_array_equal(token_vectors(m, 1), vectors[2:])
    with pytest.raises(IndexOutOfRange):
        token_vectors(m, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_token_vectors_partition(seed):
    rng = np.random.default_rng(seed)
    store = random_store(rng, dim=3, n_pairs=1)
    (src, _tgt) = next(iter(store.values()))
    stacked = np.vstack([token_vectors(src, t) for t in range(src.n_tokens)])
    np.testing.assert_array_equal(stacked, src.vectors)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 16))
def test_roundtrip_bit_exact(seed, dim):
    rng = np.random.default_rng(seed)
    store = random_store(rng, dim=dim, n_pairs=3)
    data = write_embeddings(store, dim)
    again = load_embeddings(data)
    assert list(again) == list(store)
    for sid in store:
        for a, b in zip(store[sid], again[sid]):
            assert a.wp_to_token == b.wp_to_token
            assert a.vectors.tobytes() == b.vectors.tobytes()
    assert write_embeddings(again, dim) == data


def test_reference_reader_agrees():
    rng = np.random.default_rng(5)
    store = random_store(rng, dim=5, n_pairs=4)
    data = write_embeddings(store, 5)
    ref = read_cpeb_reference(data)
    assert set(ref) == set(store)
    for sid, (src, tgt) in store.items():
        for ours, theirs in zip((src, tgt), ref[sid]):
            idx, rows = theirs
            assert tuple(idx) == ours.wp_to_token
            assert np.array(rows, dtype=np.float32).tobytes() == ours.vectors.tobytes()


def test_loading_is_deterministic():
    rng = np.random.default_rng(9)
    data = write_embeddings(random_store(rng, dim=4, n_pairs=3), 4)
    first = load_embeddings(data)
    second = load_embeddings(data)
    assert list(first) == list(second)
    for sid in first:
        for a, b in zip(first[sid], second[sid]):
            assert a.wp_to_token == b.wp_to_token
            assert np.array_equal(a.vectors, b.vectors)
