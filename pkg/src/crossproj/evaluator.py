"""Scoring of projected annotations against gold: C/FP/FN tallies and P/R/F1."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Mapping

from .corpus import Sentence
from .errors import SentenceMismatch
from .projector import ProjectedAnnotation

PREDICATE_LABEL = "predicates"
MATCH_MODES = ("frame", "position", "frame_and_sense")


@dataclass(frozen=True)
class EvalCounts:
    label: str
    correct: int = 0
    false_pos: int = 0
    false_neg: int = 0

    def __add__(self, other: "EvalCounts") -> "EvalCounts":
        return EvalCounts(self.label,
                          self.correct + other.correct,
                          self.false_pos + other.false_pos,
                          self.false_neg + other.false_neg)


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float


def _round2(x: Fraction) -> float:
    return float((Decimal(x.numerator) / Decimal(x.denominator))
                 .quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def prf(c: EvalCounts) -> PRF:
    """P = 100C/(C+FP), R = 100C/(C+FN), F1 = 2PR/(P+R); 0 when undefined.

    Computed in exact rational arithmetic and rounded half-up to two decimals
    for presentation.
    """
    p = Fraction(100 * c.correct, c.correct + c.false_pos) if c.correct + c.false_pos else Fraction(0)
    r = Fraction(100 * c.correct, c.correct + c.false_neg) if c.correct + c.false_neg else Fraction(0)
    f = 2 * p * r / (p + r) if p + r else Fraction(0)
    return PRF(_round2(p), _round2(r), _round2(f))


def aggregate(counts: Iterable[EvalCounts]) -> EvalCounts:
    total = EvalCounts("Overall")
    for c in counts:
        total = total + EvalCounts("Overall", c.correct, c.false_pos, c.false_neg)
    return total


def _predicate_key(token: int, frame: str, sense: str | None, mode: str):
    if mode == "position":
        return (token,)
    if mode == "frame":
        return (token, frame)
    return (token, frame, sense)


def score_pair(projected: ProjectedAnnotation, gold: Sentence,
               mode: str = "frame") -> list[EvalCounts]:
    """Per-label correct/false-positive/false-negative tallies for one pair.

    A predicate is correct when its target position matches a gold predicate
    and, by default, the frames agree ("position" relaxes this, and
    "frame_and_sense" additionally requires sense equality). An argument is
    correct when role, exact span, and owning predicate position all match.
    """
    if mode not in MATCH_MODES:
        raise ValueError(f"unknown predicate match mode {mode!r}")
    for p in projected.predicates:
        if not 0 <= p.target_token < len(gold):
            raise SentenceMismatch(
                f"projected predicate at token {p.target_token} outside the gold sentence")

    proj_preds = Counter(
        _predicate_key(p.target_token, p.frame, p.sense, mode) for p in projected.predicates)
    gold_preds = Counter(
        _predicate_key(p.token_index, p.frame, p.sense, mode) for p in gold.predicates)
    pred_correct = sum((proj_preds & gold_preds).values())
    counts = {PREDICATE_LABEL: EvalCounts(
        PREDICATE_LABEL, pred_correct,
        sum(proj_preds.values()) - pred_correct,
        sum(gold_preds.values()) - pred_correct)}

    proj_args = Counter(
        (projected.predicates[a.predicate].target_token, a.role, a.start, a.end)
        for a in projected.arguments)
    gold_args = Counter(
        (gold.predicates[a.predicate_index].token_index, a.role, a.start, a.end)
        for a in gold.arguments)
    labels = {key[1] for key in proj_args} | {key[1] for key in gold_args}
    for label in sorted(labels):
        p_slice = Counter({k: v for k, v in proj_args.items() if k[1] == label})
        g_slice = Counter({k: v for k, v in gold_args.items() if k[1] == label})
        correct = sum((p_slice & g_slice).values())
        counts[label] = EvalCounts(label, correct,
                                   sum(p_slice.values()) - correct,
                                   sum(g_slice.values()) - correct)
    return [counts[PREDICATE_LABEL]] + [counts[k] for k in sorted(counts) if k != PREDICATE_LABEL]


def merge_counts(per_pair: Iterable[list[EvalCounts]]) -> list[EvalCounts]:
    """Sum per-pair tallies label-wise; predicates row first, roles sorted."""
    totals: dict[str, EvalCounts] = {}
    for rows in per_pair:
        for row in rows:
            totals[row.label] = totals.get(row.label, EvalCounts(row.label)) + row
    ordered = []
    if PREDICATE_LABEL in totals:
        ordered.append(totals.pop(PREDICATE_LABEL))
    ordered.extend(totals[k] for k in sorted(totals))
    return ordered


@dataclass(frozen=True)
class FrameDiffRecord:
    verb: str
    projected_frame: str | None
    gold_frame: str | None
    category: int | None
    target_token: int


def diff_projected_frames(projected: ProjectedAnnotation, gold: Sentence,
                          categories: Mapping[int, int] | None = None,
                          ) -> list[FrameDiffRecord]:
    """One record per predicate position where projected and gold frames differ,
    including positions annotated on only one side; tagged with the divergence
    category of that predicate when a category map is supplied."""
    categories = categories or {}
    proj_by_token: dict[int, str] = {}
    for p in projected.predicates:
        if not 0 <= p.target_token < len(gold):
            raise SentenceMismatch(
                f"projected predicate at token {p.target_token} outside the gold sentence")
        proj_by_token[p.target_token] = p.frame
    gold_by_token = {p.token_index: p.frame for p in gold.predicates}

    records = []
    for token in sorted(set(proj_by_token) | set(gold_by_token)):
        pf = proj_by_token.get(token)
        gf = gold_by_token.get(token)
        if pf != gf:
            records.append(FrameDiffRecord(gold.tokens[token].surface, pf, gf,
                                           categories.get(token), token))
    return records
