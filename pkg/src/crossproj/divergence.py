"""Four-way divergence classification of source predicates and corpus statistics.

Categories: 1 frame convergence (aligned verb, same frame and sense),
2 frame divergence (aligned verb, differing annotation), 3 non-verbal
alignment (aligned only to non-verb tokens), 4 misalignment (no aligned
target token at all).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Sequence

from .corpus import Predicate, SentencePair
from .errors import CoverageGap, PredicateNotInPair
from .projector import TokenAlignment

CATEGORY_NAMES = {1: "frame_convergence", 2: "frame_divergence",
                  3: "non_verbal", 4: "misalignment"}

# Single-token non-verb alignments keyed by target POS; multi-token ones are
# phrases regardless of constituent tags.
_SUBTYPE_BY_POS = {"NOUN": "nominal", "ADP": "preposition", "ADJ": "adjective",
                   "AUX": "auxiliary", "ADV": "adverb", "PART": "auxiliary",
                   "OTHER": "nominal"}
SUBTYPES = ("nominal", "phrase", "preposition", "adjective", "auxiliary", "adverb")


@dataclass(frozen=True)
class DivergenceRecord:
    pair_id: str
    predicate_index: int
    token_index: int
    surface: str
    frame: str
    category: int
    target_token: int | None = None
    subtype: str | None = None
    target_frame: str | None = None


def _round1(value: float) -> float:
    return float(Decimal(repr(value)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def classify_predicate(pair: SentencePair, pred: Predicate,
                       alignment: TokenAlignment,
                       require_sense: bool = True) -> DivergenceRecord:
    """Assign exactly one category to a source predicate given a token alignment."""
    try:
        pi = pair.source.predicates.index(pred)
    except ValueError:
        raise PredicateNotInPair(
            f"predicate at token {pred.token_index} not in pair {pair.id!r}") from None

    surface = pair.source.tokens[pred.token_index].surface
    targets = alignment.targets_of(pred.token_index)
    if not targets:
        return DivergenceRecord(pair.id, pi, pred.token_index, surface, pred.frame, 4)

    tgt = pair.target
    verb_links = [(t, sc) for t, sc in targets if tgt.tokens[t].pos == "VERB"]
    if verb_links:
        annotated = [(t, tgt.predicate_at(t)) for t, _ in verb_links
                     if tgt.predicate_at(t) is not None]
        for t, other in annotated:
            if other.frame == pred.frame and (not require_sense or other.sense == pred.sense):
                return DivergenceRecord(pair.id, pi, pred.token_index, surface,
                                        pred.frame, 1, t, target_frame=other.frame)
        if annotated:
            t, other = annotated[0]
            return DivergenceRecord(pair.id, pi, pred.token_index, surface,
                                    pred.frame, 2, t, target_frame=other.frame)
        # verb-to-verb link without annotation on the target side still
        # diverges in annotation, so it cannot be category 3 or 4
        return DivergenceRecord(pair.id, pi, pred.token_index, surface,
                                pred.frame, 2, verb_links[0][0])

    if len(targets) > 1:
        subtype = "phrase"
    else:
        subtype = _SUBTYPE_BY_POS[tgt.tokens[targets[0][0]].pos]
    return DivergenceRecord(pair.id, pi, pred.token_index, surface, pred.frame,
                            3, targets[0][0], subtype)


def classify_corpus(pairs: Sequence[SentencePair],
                    alignments: Mapping[str, TokenAlignment],
                    stoplist: frozenset[str] = frozenset(),
                    require_sense: bool = True) -> list[DivergenceRecord]:
    """Classify every non-stoplisted source predicate of every pair."""
    records = []
    for pair in pairs:
        alignment = alignments[pair.id]
        for pred in pair.source.predicates:
            if pair.source.tokens[pred.token_index].surface in stoplist:
                continue
            records.append(classify_predicate(pair, pred, alignment, require_sense))
    return records


def _counted_predicates(sentence, stoplist: frozenset[str]) -> list[Predicate]:
    return [p for p in sentence.predicates
            if sentence.tokens[p.token_index].surface not in stoplist]


@dataclass(frozen=True)
class FrameUsage:
    langs: tuple[str, str]
    only: dict[str, list[str]]                  # frames exclusive to each language
    shared: list[tuple[str, dict[str, int]]]    # shared frames with per-language counts
    totals: dict[str, int]                      # predicate totals per language
    counts: dict[str, dict[str, int]] = field(default_factory=dict)

    def shared_percentages(self) -> list[tuple[str, dict[str, float]]]:
        return [(frame,
                 {lang: _round1(100.0 * n / self.totals[lang]) if self.totals[lang] else 0.0
                  for lang, n in by_lang.items()})
                for frame, by_lang in self.shared]


def frame_inventory_diff(pairs: Sequence[SentencePair],
                         stoplist: frozenset[str] = frozenset()) -> FrameUsage:
    """Frames exclusive to each language plus the shared-frame frequency table."""
    usage: dict[str, Counter] = {}
    for pair in pairs:
        for sentence in (pair.source, pair.target):
            counter = usage.setdefault(sentence.lang, Counter())
            for pred in _counted_predicates(sentence, stoplist):
                counter[pred.frame] += 1
    langs = tuple(sorted(usage))
    if len(langs) != 2:
        langs = (langs + ("", ""))[:2]
    a, b = langs
    set_a = set(usage.get(a, ()))
    set_b = set(usage.get(b, ()))
    shared_frames = sorted(set_a & set_b,
                           key=lambda f: (-(usage[a][f] + usage[b][f]), f))
    return FrameUsage(
        langs=(a, b),
        only={a: sorted(set_a - set_b), b: sorted(set_b - set_a)},
        shared=[(f, {a: usage[a][f], b: usage[b][f]}) for f in shared_frames],
        totals={lang: sum(usage.get(lang, Counter()).values()) for lang in (a, b)},
        counts={lang: dict(usage.get(lang, Counter())) for lang in (a, b)},
    )


@dataclass(frozen=True)
class VerbCountComparison:
    source_gt: int
    equal: int
    source_lt: int
    histograms: dict[str, dict[int, int]]


def verb_count_comparison(pairs: Sequence[SentencePair],
                          stoplist: frozenset[str] = frozenset()) -> VerbCountComparison:
    """Per-sentence predicate count comparison and per-language histograms."""
    gt = eq = lt = 0
    histograms: dict[str, Counter] = {}
    for pair in pairs:
        n_src = len(_counted_predicates(pair.source, stoplist))
        n_tgt = len(_counted_predicates(pair.target, stoplist))
        if n_src > n_tgt:
            gt += 1
        elif n_src == n_tgt:
            eq += 1
        else:
            lt += 1
        histograms.setdefault(pair.source.lang, Counter())[n_src] += 1
        histograms.setdefault(pair.target.lang, Counter())[n_tgt] += 1
    out = {lang: {k: hist[k] for k in sorted(hist)} for lang, hist in histograms.items()}
    return VerbCountComparison(gt, eq, lt, out)


def untranslated_verb_table(records: Iterable[DivergenceRecord]) -> list[tuple[str, int]]:
    """Category-4 surfaces ranked by count (descending), ties by surface."""
    counter = Counter(r.surface for r in records if r.category == 4)
    return sorted(counter.items(), key=lambda item: (-item[1], item[0]))


@dataclass(frozen=True)
class DistributionReport:
    direction: str
    total: int
    category_counts: dict[int, int]
    category_percentages: dict[int, float]
    subtype_counts: dict[str, int]
    nominal_count: int
    non_nominal_count: int
    comparison: VerbCountComparison
    totals_by_lang: dict[str, int]
    frame_usage: FrameUsage
    untranslated: list[tuple[str, int]]


def distribution(pairs: Sequence[SentencePair], direction: str,
                 records: Sequence[DivergenceRecord],
                 stoplist: frozenset[str] = frozenset()) -> DistributionReport:
    """Aggregate classification records into corpus-level statistics.

    Every counted source predicate must be covered by exactly one record.
    """
    oriented = [pair.oriented(direction) for pair in pairs]
    seen = Counter((r.pair_id, r.predicate_index) for r in records)
    for pair in oriented:
        for i, pred in enumerate(pair.source.predicates):
            if pair.source.tokens[pred.token_index].surface in stoplist:
                continue
            if seen.get((pair.id, i), 0) != 1:
                raise CoverageGap(f"{pair.id}#{i}")

    cat_counts = Counter(r.category for r in records)
    total = len(records)
    percentages = {c: _round1(100.0 * cat_counts.get(c, 0) / total) if total else 0.0
                   for c in (1, 2, 3, 4)}
    subtype_counts = Counter(r.subtype for r in records if r.category == 3)
    nominal = subtype_counts.get("nominal", 0)
    usage = frame_inventory_diff(oriented, stoplist)
    return DistributionReport(
        direction=direction,
        total=total,
        category_counts={c: cat_counts.get(c, 0) for c in (1, 2, 3, 4)},
        category_percentages=percentages,
        subtype_counts={s: subtype_counts.get(s, 0) for s in SUBTYPES},
        nominal_count=nominal,
        non_nominal_count=sum(subtype_counts.values()) - nominal,
        comparison=verb_count_comparison(oriented, stoplist),
        totals_by_lang=dict(usage.totals),
        frame_usage=usage,
        untranslated=untranslated_verb_table(records),
    )
