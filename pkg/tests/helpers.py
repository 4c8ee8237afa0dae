"""Random generators for valid corpora and embedding stores."""

import numpy as np

from crossproj.corpus import Argument, Predicate, Sentence, SentencePair, Token
from crossproj.embeddings import EmbeddingMatrix

SURFACE_POOL = (
    "the", "committee", "urge", "report", "增加", "委员会", "敦促", "报告",
    "naïve", "Ψυχή", "eé", "步骤", "take", "steps", "été",
)
POS_POOL = ("VERB", "NOUN", "ADJ", "ADV", "ADP", "AUX", "PART", "OTHER")


def random_sentence(rng: np.random.Generator, lang: str, frames, roles) -> Sentence:
    n = int(rng.integers(1, 9))
    tokens = tuple(
        Token(i, SURFACE_POOL[int(rng.integers(0, len(SURFACE_POOL)))], POS_POOL[int(rng.integers(0, len(POS_POOL)))])
        for i in range(n))
    predicates = []
    used = set()
    for _ in range(int(rng.integers(0, min(n, 3) + 1))):
        t = int(rng.integers(0, n))
        if t in used:
            continue
        used.add(t)
        sense = None
        if rng.random() < 0.7:
            sense = f"bn:{int(rng.integers(0, 10**8)):08d}v"
        predicates.append(Predicate(t, frames[int(rng.integers(0, len(frames)))], sense))
    arguments = []
    for pi, pred in enumerate(predicates):
        for _ in range(int(rng.integers(0, 3))):
            start = int(rng.integers(0, n))
            end = int(rng.integers(start, n))
            if start <= pred.token_index <= end:
                continue
            arguments.append(Argument(pi, roles[int(rng.integers(0, len(roles)))], start, end))
    return Sentence(lang, tokens, tuple(predicates), tuple(arguments))


def random_pair(rng: np.random.Generator, inv, pair_id: str) -> SentencePair:
    frames = sorted(inv.frames)
    roles = sorted(inv.roles)
    source = random_sentence(rng, "en", frames, roles)
    target = random_sentence(rng, "zh", frames, roles)
    alignment = None
    if rng.random() < 0.6:
        links = {(int(rng.integers(0, len(source))), int(rng.integers(0, len(target))))
                 for _ in range(int(rng.integers(0, 6)))}
        alignment = tuple(sorted(links))
    return SentencePair(pair_id, source, target, alignment)


def random_corpus(rng: np.random.Generator, inv, n: int) -> list[SentencePair]:
    return [random_pair(rng, inv, f"r{idx:05d}") for idx in range(n)]


def random_matrix(rng: np.random.Generator, sid: str, dim: int, n_tokens: int) -> EmbeddingMatrix:
    wp_map = []
    for t in range(n_tokens):
        wp_map.extend([t] * int(rng.integers(1, 4)))
    vectors = rng.normal(size=(len(wp_map), dim)).astype(np.float32)
    # keep every row clearly nonzero
    vectors[np.abs(vectors).sum(axis=1) < 1e-3] += 1.0
    return EmbeddingMatrix(sid, vectors, tuple(wp_map))


def random_store(rng: np.random.Generator, dim: int, n_pairs: int):
    store = {}
    for idx in range(n_pairs):
        sid = f"s{idx:05d}_{int(rng.integers(0, 1000))}"
        store[sid] = (random_matrix(rng, sid, dim, int(rng.integers(1, 7))),
                      random_matrix(rng, sid, dim, int(rng.integers(1, 7))))
    return store
