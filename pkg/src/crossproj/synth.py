"""Synthetic bilingual corpora with known projection answers, for tests and smoke runs."""

from __future__ import annotations

import numpy as np

from .corpus import Argument, Predicate, Sentence, SentencePair, Token
from .embeddings import EmbeddingMatrix
from .inventory import FrameInventory, load_inventory

_POS_CYCLE = ("NOUN", "VERB", "NOUN", "ADJ", "VERB", "NOUN", "ADV", "NOUN")


def identity_corpus(n_pairs: int, seed: int = 0, max_tokens: int = 10,
                    inv: FrameInventory | None = None,
                    ) -> tuple[list[SentencePair], dict[str, tuple[EmbeddingMatrix, EmbeddingMatrix]]]:
    """Mirrored pairs: the target repeats the source structure token for token.

    Gold alignment is the identity, and each token carries an orthogonal unit
    vector shared by both sides, so any sane aligner recovers the identity and
    projection reproduces the target gold exactly.
    """
    inv = inv or load_inventory()
    frames = sorted(inv.frames)
    rng = np.random.default_rng(seed)
    dim = max(max_tokens, 4)

    pairs = []
    store = {}
    for idx in range(n_pairs):
        n = int(rng.integers(3, max_tokens + 1))
        pos = [_POS_CYCLE[i % len(_POS_CYCLE)] for i in range(n)]
        verb_positions = [i for i, p in enumerate(pos) if p == "VERB"]
        if not verb_positions:
            pos[n // 2] = "VERB"
            verb_positions = [n // 2]

        predicates = []
        arguments = []
        for pi, v in enumerate(verb_positions):
            frame = frames[int(rng.integers(0, len(frames)))]
            sense = f"bn:{int(rng.integers(0, 10**8)):08d}v"
            predicates.append(Predicate(v, frame, sense))
            left = v - 1
            if left >= 0:
                arguments.append(Argument(pi, "agent", left, left))
            right = v + 1
            if right < n:
                arguments.append(Argument(pi, "theme", right, min(n - 1, right + 1)))

        def sentence(lang: str, prefix: str) -> Sentence:
            tokens = tuple(Token(i, f"{prefix}{idx}_{i}", pos[i]) for i in range(n))
            return Sentence(lang, tokens, tuple(predicates), tuple(arguments))

        pair = SentencePair(f"pair{idx:04d}", sentence("en", "s"), sentence("zh", "t"),
                            tuple((i, i) for i in range(n)))
        pairs.append(pair)

        vectors = np.zeros((n, dim), dtype=np.float32)
        vectors[np.arange(n), np.arange(n)] = 1.0
        wp_map = tuple(range(n))
        store[pair.id] = (EmbeddingMatrix(pair.id, vectors.copy(), wp_map),
                          EmbeddingMatrix(pair.id, vectors.copy(), wp_map))
    return pairs, store
