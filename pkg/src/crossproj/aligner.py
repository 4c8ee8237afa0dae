"""Word-piece alignment: filtered top-k argmax and softmax + OT intersection."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .corpus import Sentence
from .embeddings import EmbeddingMatrix
from .errors import DimMismatch, IndexOutOfRange, ShapeMismatch, ZeroVector


@dataclass(frozen=True)
class SimilarityMatrix:
    """q x p scores: rows are target word-pieces, columns source word-pieces."""

    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def transposed(self) -> "SimilarityMatrix":
        return SimilarityMatrix(self.values.T.copy())


@dataclass(frozen=True)
class AlignerConfig:
    mode: str = "topk_s2t"          # or "ot_bidir"
    k: int = 2
    epsilon: float = 0.1
    max_iters: int = 1000
    tol: float = 1e-9
    threshold: float = 1e-3
    temperature: float = 1.0

    def __post_init__(self):
        if self.mode not in ("topk_s2t", "ot_bidir"):
            raise ValueError(f"unknown aligner mode {self.mode!r}")
        if self.k < 1 or self.epsilon <= 0 or self.max_iters < 1 or self.tol <= 0:
            raise ValueError("k, epsilon, max_iters and tol must be positive")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")


@dataclass(frozen=True)
class SinkhornReport:
    converged: bool
    iterations: int
    residual: float
    history: tuple[float, ...] = ()


@dataclass(frozen=True)
class AlignmentSet:
    """Word-piece pairs (source index, target index, score), deduplicated."""

    pairs: tuple[tuple[int, int, float], ...]
    sinkhorn: SinkhornReport | None = None

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, int, float]],
                   sinkhorn: SinkhornReport | None = None) -> "AlignmentSet":
        best: dict[tuple[int, int], float] = {}
        for s, t, score in pairs:
            key = (s, t)
            if key not in best or score > best[key]:
                best[key] = score
        ordered = tuple((s, t, best[(s, t)]) for s, t in sorted(best))
        return AlignmentSet(ordered, sinkhorn)

    def __len__(self) -> int:
        return len(self.pairs)

    def index_pairs(self) -> set[tuple[int, int]]:
        return {(s, t) for s, t, _ in self.pairs}


def _check_dims(src: EmbeddingMatrix, tgt: EmbeddingMatrix) -> None:
    if src.dim != tgt.dim:
        raise DimMismatch(src.dim, tgt.dim)


def _check_no_zero(m: EmbeddingMatrix, side: str) -> None:
    zero = np.where(~np.asarray(m.vectors, dtype=np.float64).any(axis=1))[0]
    if zero.size:
        raise ZeroVector(int(zero[0]), side)


def cosine_matrix(src: EmbeddingMatrix, tgt: EmbeddingMatrix) -> SimilarityMatrix:
    """Pairwise cosine similarity; values[j][i] = cos(src wp i, tgt wp j)."""
    _check_dims(src, tgt)
    _check_no_zero(src, "source")
    _check_no_zero(tgt, "target")
    return SimilarityMatrix(kernels.pairwise_cosine(src.vectors, tgt.vectors))


def dot_matrix(src: EmbeddingMatrix, tgt: EmbeddingMatrix) -> SimilarityMatrix:
    """Pairwise dot products between source and target word-piece vectors."""
    _check_dims(src, tgt)
    return SimilarityMatrix(kernels.pairwise_dot(src.vectors, tgt.vectors))


def normalize_simplex(sm: SimilarityMatrix, axis: str = "rows",
                      temperature: float = 1.0) -> SimilarityMatrix:
    """Softmax along rows or columns so each slice sums to one."""
    if axis == "rows":
        return SimilarityMatrix(kernels.softmax_rows(sm.values, temperature))
    if axis == "cols":
        return SimilarityMatrix(kernels.softmax_rows(sm.values.T, temperature).T.copy())
    raise ValueError(f"axis must be 'rows' or 'cols', got {axis!r}")


def sinkhorn_plan(cost: SimilarityMatrix | np.ndarray, mu: Sequence[float],
                  nu: Sequence[float], cfg: AlignerConfig,
                  ) -> tuple[np.ndarray, SinkhornReport]:
    """Entropic transport plan for a q x p cost matrix.

    mu is the source (column) marginal of length p, nu the target (row)
    marginal of length q; both non-negative and summing to one. The plan is
    projected to exact marginals; non-convergence is reported, not raised.
    """
    values = cost.values if isinstance(cost, SimilarityMatrix) else np.asarray(cost)
    mu = np.asarray(mu, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    q, p = values.shape
    if mu.shape != (p,) or nu.shape != (q,):
        raise ShapeMismatch(f"marginals {mu.shape}/{nu.shape} do not fit cost {values.shape}")
    if (mu < 0).any() or (nu < 0).any():
        raise ValueError("marginals must be non-negative")
    if abs(mu.sum() - 1.0) > 1e-9 or abs(nu.sum() - 1.0) > 1e-9:
        raise ValueError("marginals must each sum to one")
    plan, iters, residual, history = kernels.sinkhorn_log(
        values, mu, nu, cfg.epsilon, cfg.max_iters, cfg.tol)
    report = SinkhornReport(residual < cfg.tol, iters, residual, tuple(history))
    return plan, report


def _annotated_kind(sentence: Sentence) -> dict[int, str]:
    """Label kind carried by each source token: predicate, argument, or none."""
    kinds: dict[int, str] = {}
    for arg in sentence.arguments:
        for t in range(arg.start, arg.end + 1):
            kinds[t] = "argument"
    for tok in sentence.tokens:
        if tok.pos == "VERB" and tok.index not in kinds:
            kinds[tok.index] = "predicate"
    for pred in sentence.predicates:
        kinds[pred.token_index] = "predicate"
    return kinds


def _passes_pos_filter(kind: str, pos: str) -> bool:
    # Predicate labels may only land on target verbs; argument labels on any
    # token (the coarse tagset has no punctuation label to exclude).
    if kind == "predicate":
        return pos == "VERB"
    return True


def extract_topk_s2t(sm: SimilarityMatrix, src: Sentence, tgt: Sentence,
                     wp_maps: tuple[Sequence[int], Sequence[int]],
                     cfg: AlignerConfig) -> AlignmentSet:
    """One-winner-per-column alignment over annotated/verb source word-pieces.

    For each qualifying source word-piece, the k highest-scoring target
    word-pieces are shortlisted, candidates failing the target POS filter are
    discarded, and the best survivor (ties to the lowest index) is aligned.
    An empty shortlist yields no alignment for that word-piece.
    """
    values = sm.values
    src_map, tgt_map = wp_maps
    q, p = values.shape
    if len(src_map) != p or len(tgt_map) != q:
        raise ShapeMismatch(
            f"similarity {values.shape} does not match word-piece maps ({len(src_map)}, {len(tgt_map)})")
    if src_map and max(src_map) >= len(src) or tgt_map and max(tgt_map) >= len(tgt):
        raise ShapeMismatch("word-piece map indexes a missing token")

    kinds = _annotated_kind(src)
    out = []
    for i in range(p):
        kind = kinds.get(src_map[i])
        if kind is None:
            continue
        column = values[:, i]
        order = sorted(range(q), key=lambda j: (-column[j], j))
        survivors = [j for j in order[:cfg.k]
                     if _passes_pos_filter(kind, tgt.tokens[tgt_map[j]].pos)]
        if survivors:
            best = survivors[0]
            out.append((i, best, float(column[best])))
    return AlignmentSet.from_pairs(out)


def extract_ot_bidir(src: EmbeddingMatrix, tgt: EmbeddingMatrix,
                     cfg: AlignerConfig) -> AlignmentSet:
    """Bidirectional intersection of softmax-normalized similarities, gated by
    an entropic transport plan; emitted scores are min of the two directions."""
    s = dot_matrix(src, tgt)
    s_xy = normalize_simplex(s, "rows", cfg.temperature).values
    s_yx = normalize_simplex(s, "cols", cfg.temperature).values
    q, p = s.values.shape
    mu = np.full(p, 1.0 / p)
    nu = np.full(q, 1.0 / q)
    plan, report = sinkhorn_plan(SimilarityMatrix(-s.values), mu, nu, cfg)
    gate = plan * s_xy * s_yx
    total = gate.sum()
    if total > 0:
        gate = gate / total
    thr = cfg.threshold
    pairs = []
    for j in range(q):
        for i in range(p):
            if s_xy[j, i] > thr and s_yx[j, i] > thr and gate[j, i] > thr:
                pairs.append((i, j, float(min(s_xy[j, i], s_yx[j, i]))))
    return AlignmentSet.from_pairs(pairs, report)


def to_token_alignment(a: AlignmentSet,
                       wp_maps: tuple[Sequence[int], Sequence[int]],
                       ) -> set[tuple[int, int]]:
    """Token pair present iff any of its word-piece pairs is present."""
    return set(to_token_alignment_scored(a, wp_maps))


def to_token_alignment_scored(a: AlignmentSet,
                              wp_maps: tuple[Sequence[int], Sequence[int]],
                              ) -> dict[tuple[int, int], float]:
    """Union rule with the best word-piece score kept per token pair."""
    src_map, tgt_map = wp_maps
    out: dict[tuple[int, int], float] = {}
    for s_wp, t_wp, score in a.pairs:
        if not (0 <= s_wp < len(src_map)) or not (0 <= t_wp < len(tgt_map)):
            raise IndexOutOfRange(f"word-piece pair ({s_wp}, {t_wp}) outside the maps")
        key = (src_map[s_wp], tgt_map[t_wp])
        if key not in out or score > out[key]:
            out[key] = score
    return out


def align_pair(src_m: EmbeddingMatrix, tgt_m: EmbeddingMatrix,
               src: Sentence, tgt: Sentence, cfg: AlignerConfig) -> AlignmentSet:
    """Run the configured extraction mode on one sentence pair."""
    if cfg.mode == "topk_s2t":
        sm = cosine_matrix(src_m, tgt_m)
        return extract_topk_s2t(sm, src, tgt, (src_m.wp_to_token, tgt_m.wp_to_token), cfg)
    return extract_ot_bidir(src_m, tgt_m, cfg)


def with_mode(cfg: AlignerConfig, mode: str) -> AlignerConfig:
    return replace(cfg, mode=mode)
