"""Run a multilingual LM over pre-tokenized sentences and emit CPEB embeddings."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import cpeb
from .corpus import PairTokens, read_corpus_tokens


class ExportError(RuntimeError):
    pass


class TokenizationMismatch(ExportError):
    def __init__(self, sentence_id: str, token: int, reason: str):
        self.sentence_id = sentence_id
        self.token = token
        super().__init__(f"{sentence_id}: token {token}: {reason}")


@dataclass(frozen=True)
class ExportConfig:
    model: str = "bert-base-multilingual-cased"
    layer: int = 8
    corpus: str = ""
    out: str = ""
    batch_size: int = 16


def _sentence_block(sentence_hidden, word_ids, surfaces, sentence_id):
    """Collect per-word-piece rows and the word-piece -> token map for one side."""
    wp_to_token = []
    rows = []
    for position, word_id in enumerate(word_ids):
        if word_id is None:  # special tokens
            continue
        wp_to_token.append(word_id)
        rows.append(sentence_hidden[position])
    covered = set(wp_to_token)
    for token_index in range(len(surfaces)):
        if token_index not in covered:
            raise TokenizationMismatch(
                sentence_id, token_index,
                f"surface {surfaces[token_index]!r} yields no word-pieces")
    for prev, cur in zip(wp_to_token, wp_to_token[1:]):
        if cur < prev:
            raise TokenizationMismatch(sentence_id, cur, "word-piece map not monotone")
    vectors = np.stack(rows).astype(np.float32)
    if not np.isfinite(vectors).all():
        raise ExportError(f"{sentence_id}: non-finite hidden state")
    if (~vectors.any(axis=1)).any():
        raise ExportError(f"{sentence_id}: all-zero hidden state row")
    return wp_to_token, vectors


def _encode_batch(tokenizer, model, sentences, layer, max_len):
    import torch

    for surfaces, sid in sentences:
        if len(surfaces) > max_len:
            raise TokenizationMismatch(sid, max_len, "sentence exceeds the model length limit")
    encoded = tokenizer([s for s, _ in sentences], is_split_into_words=True,
                        padding=True, truncation=False, return_tensors="pt")
    if encoded["input_ids"].shape[1] > max_len:
        longest = max(range(len(sentences)),
                      key=lambda i: sum(encoded["attention_mask"][i].tolist()))
        raise TokenizationMismatch(sentences[longest][1], 0,
                                   "sentence exceeds the model length limit")
    with torch.no_grad():
        output = model(**encoded, output_hidden_states=True)
    hidden = output.hidden_states[layer].numpy()
    blocks = []
    for i, (surfaces, sid) in enumerate(sentences):
        blocks.append(_sentence_block(hidden[i], encoded.word_ids(i), surfaces, sid))
    return blocks


def export(cfg: ExportConfig) -> Path:
    """Export the corpus to a CPEB file plus a sidecar provenance manifest."""
    import torch
    from transformers import AutoModel, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(cfg.model)
    if not tokenizer.is_fast:
        raise ExportError("a fast tokenizer is required for word-piece offsets")
    model = AutoModel.from_pretrained(cfg.model)
    model.eval()
    torch.manual_seed(0)

    depth = getattr(model.config, "num_hidden_layers", None)
    if depth is None or not 0 <= cfg.layer <= depth:
        raise ExportError(f"layer {cfg.layer} outside the model depth (0..{depth})")
    dim = model.config.hidden_size
    max_len = min(getattr(model.config, "max_position_embeddings", 512),
                  tokenizer.model_max_length)

    pairs: list[PairTokens] = read_corpus_tokens(cfg.corpus)

    # flatten to one sentence list, batch forwards, then regroup per pair
    sentences = []
    for pair in pairs:
        sentences.append((pair.source, f"{pair.pair_id}/source"))
        sentences.append((pair.target, f"{pair.pair_id}/target"))
    blocks = []
    for start in range(0, len(sentences), max(1, cfg.batch_size)):
        blocks.extend(_encode_batch(tokenizer, model,
                                    sentences[start:start + max(1, cfg.batch_size)],
                                    cfg.layer, max_len))

    out_path = Path(cfg.out)
    buffer = io.BytesIO()
    cpeb.write_header(buffer, dim, len(pairs))
    for i, pair in enumerate(pairs):
        cpeb.write_pair_id(buffer, pair.pair_id)
        for wp_to_token, vectors in (blocks[2 * i], blocks[2 * i + 1]):
            cpeb.write_block(buffer, wp_to_token, vectors)
    out_path.write_bytes(buffer.getvalue())

    manifest = {
        "model": cfg.model,
        "layer": cfg.layer,
        "dim": dim,
        "pairs": len(pairs),
        "batch_size": cfg.batch_size,
        "format": {"magic": "CPEB", "version": cpeb.VERSION},
    }
    Path(str(out_path) + ".manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", "utf-8")
    return out_path
