"""Transfer of predicate frames/senses and argument spans along a token alignment."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .aligner import AlignerConfig, align_pair, to_token_alignment_scored
from .corpus import SentencePair, Sentence
from .embeddings import EmbeddingMatrix, check_matches_sentence
from .errors import MissingEmbeddings


@dataclass(frozen=True)
class TokenAlignment:
    """Token-level alignment with per-pair scores (gold links score 1.0)."""

    scores: Mapping[tuple[int, int], float]
    sinkhorn: object | None = None  # SinkhornReport when produced by the OT aligner

    @staticmethod
    def from_gold(pairs: Sequence[tuple[int, int]]) -> "TokenAlignment":
        return TokenAlignment({(s, t): 1.0 for s, t in pairs})

    def targets_of(self, source_token: int) -> list[tuple[int, float]]:
        out = [(t, sc) for (s, t), sc in self.scores.items() if s == source_token]
        out.sort(key=lambda item: (-item[1], item[0]))
        return out

    def pairs(self) -> set[tuple[int, int]]:
        return set(self.scores)


@dataclass(frozen=True)
class ProjectedPredicate:
    target_token: int
    frame: str
    sense: str | None
    source_predicate: int  # index into the source sentence's predicate list
    score: float


@dataclass(frozen=True)
class ProjectedArgument:
    predicate: int         # index into the projected predicate list
    role: str
    start: int
    end: int
    discontiguous: bool = False


@dataclass(frozen=True)
class Dropped:
    kind: str              # "predicate" | "argument"
    source_index: int
    reason: str            # "no_alignment" | "no_verb_alignment" | "unattached"


@dataclass(frozen=True)
class ProjectedAnnotation:
    pair_id: str
    predicates: tuple[ProjectedPredicate, ...] = ()
    arguments: tuple[ProjectedArgument, ...] = ()
    dropped: tuple[Dropped, ...] = field(default_factory=tuple)


def project_pair(pair: SentencePair, alignment: TokenAlignment) -> ProjectedAnnotation:
    """Project source annotations onto the target side of one pair.

    A predicate lands on its best-scoring aligned target verb token and is
    dropped otherwise; an argument of a projected predicate becomes the
    minimal contiguous cover of the target tokens aligned to its span, and
    arguments of unprojected predicates are dropped as unattached.
    """
    src, tgt = pair.source, pair.target
    projected_preds: list[ProjectedPredicate] = []
    dropped: list[Dropped] = []
    placed: dict[int, int] = {}  # source predicate index -> projected index

    for pi, pred in enumerate(src.predicates):
        candidates = alignment.targets_of(pred.token_index)
        if not candidates:
            dropped.append(Dropped("predicate", pi, "no_alignment"))
            continue
        verb_targets = [(t, sc) for t, sc in candidates if tgt.tokens[t].pos == "VERB"]
        if not verb_targets:
            dropped.append(Dropped("predicate", pi, "no_verb_alignment"))
            continue
        target_token, score = verb_targets[0]
        placed[pi] = len(projected_preds)
        projected_preds.append(
            ProjectedPredicate(target_token, pred.frame, pred.sense, pi, score))

    projected_args: list[ProjectedArgument] = []
    pair_set = alignment.pairs()
    for ai, arg in enumerate(src.arguments):
        if arg.predicate_index not in placed:
            dropped.append(Dropped("argument", ai, "unattached"))
            continue
        covered = sorted({t for (s, t) in pair_set if arg.start <= s <= arg.end})
        if not covered:
            dropped.append(Dropped("argument", ai, "no_alignment"))
            continue
        start, end = covered[0], covered[-1]
        projected_args.append(ProjectedArgument(
            placed[arg.predicate_index], arg.role, start, end,
            discontiguous=len(covered) != end - start + 1))

    return ProjectedAnnotation(pair.id, tuple(projected_preds),
                               tuple(projected_args), tuple(dropped))


def resolve_workers(value: int | None = None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("CROSSPROJ_WORKERS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def alignment_for_pair(pair: SentencePair,
                       embeddings: Mapping[str, tuple[EmbeddingMatrix, EmbeddingMatrix]],
                       cfg: AlignerConfig) -> TokenAlignment:
    if pair.id not in embeddings:
        raise MissingEmbeddings(pair.id)
    src_m, tgt_m = embeddings[pair.id]
    check_matches_sentence(src_m, pair.source)
    check_matches_sentence(tgt_m, pair.target)
    aset = align_pair(src_m, tgt_m, pair.source, pair.target, cfg)
    return TokenAlignment(
        to_token_alignment_scored(aset, (src_m.wp_to_token, tgt_m.wp_to_token)),
        sinkhorn=aset.sinkhorn)


def project_corpus(pairs: Sequence[SentencePair], cfg: AlignerConfig,
                   embeddings: Mapping[str, tuple[EmbeddingMatrix, EmbeddingMatrix]],
                   workers: int | None = None) -> list[ProjectedAnnotation]:
    """Project every pair; results follow input order regardless of parallelism."""
    for pair in pairs:
        if pair.id not in embeddings:
            raise MissingEmbeddings(pair.id)

    def run(pair: SentencePair) -> ProjectedAnnotation:
        return project_pair(pair, alignment_for_pair(pair, embeddings, cfg))

    n = resolve_workers(workers)
    if n == 1 or len(pairs) < 2:
        return [run(pair) for pair in pairs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(run, pairs))


def projection_to_obj(pair: SentencePair, proj: ProjectedAnnotation) -> dict:
    """Corpus-schema record carrying the projection on the target side."""
    from .corpus import sentence_to_obj

    target = sentence_to_obj(Sentence(pair.target.lang, pair.target.tokens))
    target["predicates"] = [
        {"token": p.target_token, "frame": p.frame, "sense": p.sense}
        for p in proj.predicates]
    target["arguments"] = [
        {"predicate": a.predicate, "role": a.role, "start": a.start, "end": a.end}
        for a in proj.arguments]
    return {
        "id": pair.id,
        "source": sentence_to_obj(pair.source),
        "target": target,
        "gold_alignment": [list(p) for p in pair.gold_alignment]
        if pair.gold_alignment is not None else None,
        "dropped": [{"kind": d.kind, "index": d.source_index, "reason": d.reason}
                    for d in proj.dropped],
    }
