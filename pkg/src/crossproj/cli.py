"""Batch command-line front end: project, evaluate, divergence, stats."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, kernels
from .aligner import AlignerConfig
from .corpus import (
    SentencePair,
    dumps_canonical,
    parse_corpus,
    validate_against_inventory,
)
from .divergence import (
    SUBTYPES,
    classify_corpus,
    classify_predicate,
    distribution,
    frame_inventory_diff,
    untranslated_verb_table,
    verb_count_comparison,
)
from .embeddings import load_embeddings
from .errors import CrossprojError
from .evaluator import (
    EvalCounts,
    PREDICATE_LABEL,
    aggregate,
    diff_projected_frames,
    merge_counts,
    prf,
    score_pair,
)
from .inventory import load_inventory, load_light_verbs
from .projector import (
    TokenAlignment,
    alignment_for_pair,
    project_pair,
    projection_to_obj,
    resolve_workers,
)

_ALIGNER_MODES = {"topk": "topk_s2t", "ot": "ot_bidir"}


def _add_common(parser: argparse.ArgumentParser, embeddings_required: bool | None) -> None:
    parser.add_argument("--corpus", required=True, help="JSON-lines corpus path")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--direction", default=None,
                        help="source language code (default: orientation of the first pair)")
    parser.add_argument("--format", default="json,tsv,csv",
                        help="comma-separated subset of json,tsv,csv")
    parser.add_argument("--inventory", default=None, help="inventory JSON override")
    parser.add_argument("--light-verbs", default=None, help="light-verb stoplist override")
    parser.add_argument("--strict-inventory", action="store_true",
                        help="also flag roles outside each frame's argument structure")
    if embeddings_required is not None:
        parser.add_argument("--embeddings", required=embeddings_required,
                            default=None, help="CPEB embeddings path")


def _add_aligner_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--aligner", choices=sorted(_ALIGNER_MODES), default="topk")
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--epsilon", type=float, default=0.1)
    parser.add_argument("--threshold", type=float, default=1e-3)
    parser.add_argument("--temperature", type=float, default=1.0)
    parser.add_argument("--max-iters", type=int, default=1000)
    parser.add_argument("--tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossproj",
        description="Project, evaluate, and analyze predicate-argument annotations "
                    "across parallel sentences.")
    parser.add_argument("--version", action="version", version=f"crossproj {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project annotations along computed alignments")
    _add_common(p, embeddings_required=True)
    _add_aligner_flags(p)

    p = sub.add_parser("evaluate", help="project and score against target gold")
    _add_common(p, embeddings_required=True)
    _add_aligner_flags(p)
    p.add_argument("--predicate-match", choices=["frame", "position", "frame-sense"],
                   default="frame")

    p = sub.add_parser("divergence", help="classify predicates into divergence categories")
    _add_common(p, embeddings_required=False)
    _add_aligner_flags(p)

    p = sub.add_parser("stats", help="corpus-level distribution statistics")
    _add_common(p, embeddings_required=None)
    return parser


def _aligner_config(args: argparse.Namespace) -> AlignerConfig:
    return AlignerConfig(mode=_ALIGNER_MODES[args.aligner], k=args.k,
                         epsilon=args.epsilon, max_iters=args.max_iters,
                         tol=args.tol, threshold=args.threshold,
                         temperature=args.temperature)


def _cfg_obj(cfg: AlignerConfig) -> dict:
    return {"mode": cfg.mode, "k": cfg.k, "epsilon": cfg.epsilon,
            "max_iters": cfg.max_iters, "tol": cfg.tol,
            "threshold": cfg.threshold, "temperature": cfg.temperature}


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class _Run:
    """Shared run state: oriented corpus, embeddings, warnings, and outputs."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.formats = {f.strip() for f in args.format.split(",") if f.strip()}
        unknown = self.formats - {"json", "tsv", "csv"}
        if unknown:
            raise CrossprojError(f"unknown output format(s): {', '.join(sorted(unknown))}")
        self.out_dir = Path(args.out)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.inventory = load_inventory(args.inventory)
        self.stoplist = load_light_verbs(args.light_verbs)
        self.warnings = {"sinkhorn_nonconverged": 0}
        self.outputs: list[str] = []

        corpus_bytes = Path(args.corpus).read_bytes()
        self.corpus_sha = _sha256(corpus_bytes)
        stored = parse_corpus(corpus_bytes, self.inventory)
        if not stored:
            raise CrossprojError("corpus is empty")
        if args.strict_inventory:
            problems = []
            for pair in stored:
                for side, sentence in (("source", pair.source), ("target", pair.target)):
                    for v in validate_against_inventory(sentence, self.inventory, strict=True):
                        problems.append(f"{pair.id}/{side}: {v.message}")
            if problems:
                raise CrossprojError("inventory violations:\n" + "\n".join(problems))

        self.direction = args.direction or stored[0].source.lang
        self.pairs = [pair.oriented(self.direction) for pair in stored]
        swapped_ids = {pair.id for pair, orig in zip(self.pairs, stored)
                       if orig.source.lang != self.direction}

        self.embeddings = None
        self.embeddings_sha = None
        emb_path = getattr(args, "embeddings", None)
        if emb_path:
            emb_bytes = Path(emb_path).read_bytes()
            self.embeddings_sha = _sha256(emb_bytes)
            store = load_embeddings(emb_bytes)
            self.embeddings = {
                key: ((tgt, src) if key in swapped_ids else (src, tgt))
                for key, (src, tgt) in store.items()}

    def alignments(self, pairs: list[SentencePair], cfg: AlignerConfig,
                   prefer_gold: bool, embeddings=None) -> dict[str, TokenAlignment]:
        store = self.embeddings if embeddings is None else embeddings

        def one(pair: SentencePair) -> TokenAlignment:
            if prefer_gold and pair.gold_alignment is not None:
                return TokenAlignment.from_gold(pair.gold_alignment)
            if store is None:
                raise CrossprojError(
                    f"pair {pair.id!r} has no gold alignment and no embeddings were given")
            return alignment_for_pair(pair, store, cfg)

        workers = resolve_workers()
        if workers == 1 or len(pairs) < 2:
            results = [one(pair) for pair in pairs]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(one, pairs))
        for alignment in results:
            report = alignment.sinkhorn
            if report is not None and not report.converged:
                self.warnings["sinkhorn_nonconverged"] += 1
        return {pair.id: alignment for pair, alignment in zip(pairs, results)}

    def emit(self, name: str, text: str) -> None:
        suffix = name.rsplit(".", 1)[-1]
        family = "json" if suffix in ("json", "jsonl") else suffix
        if family not in self.formats:
            return
        (self.out_dir / name).write_text(text, encoding="utf-8")
        self.outputs.append(name)

    def write_manifest(self, command: str, started: float, extra: dict) -> None:
        manifest = {
            "command": command,
            "version": __version__,
            "direction": self.direction,
            "formats": sorted(self.formats),
            "corpus": {"path": str(self.args.corpus), "sha256": self.corpus_sha},
            "embeddings": (
                {"path": str(self.args.embeddings), "sha256": self.embeddings_sha}
                if self.embeddings_sha else None),
            "kernel_backend": kernels.active_backend(),
            "workers": resolve_workers(),
            "warnings": self.warnings,
            "outputs": sorted(self.outputs),
            "duration_seconds": round(time.monotonic() - started, 6),
            **extra,
        }
        path = self.out_dir / "manifest.json"
        path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n", "utf-8")


def _scores_tables(rows: list[EvalCounts], overall: EvalCounts) -> tuple[str, str]:
    header = ["label", "C", "FP", "FN", "P", "R", "F1"]
    lines = ["\t".join(header)]
    payload = []
    for c in rows + [overall]:
        m = prf(c)
        lines.append(f"{c.label}\t{c.correct}\t{c.false_pos}\t{c.false_neg}"
                     f"\t{m.precision:.2f}\t{m.recall:.2f}\t{m.f1:.2f}")
        payload.append({"label": c.label, "C": c.correct, "FP": c.false_pos,
                        "FN": c.false_neg, "P": m.precision, "R": m.recall, "F1": m.f1})
    tsv = "\n".join(lines) + "\n"
    js = json.dumps({"rows": payload}, sort_keys=True, indent=2) + "\n"
    return tsv, js


def _zero_filled(merged: list[EvalCounts], inventory) -> list[EvalCounts]:
    by_label = {c.label: c for c in merged}
    rows = [by_label.get(PREDICATE_LABEL, EvalCounts(PREDICATE_LABEL))]
    rows.extend(by_label.get(role, EvalCounts(role)) for role in sorted(inventory.roles))
    return rows


def cmd_project(args: argparse.Namespace) -> int:
    started = time.monotonic()
    run = _Run(args)
    cfg = _aligner_config(args)
    alignments = run.alignments(run.pairs, cfg, prefer_gold=False)
    lines = []
    for pair in run.pairs:
        proj = project_pair(pair, alignments[pair.id])
        lines.append(dumps_canonical(projection_to_obj(pair, proj)))
    run.emit("projected.jsonl", "\n".join(lines) + "\n")
    run.write_manifest("project", started, {"aligner": _cfg_obj(cfg)})
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    started = time.monotonic()
    run = _Run(args)
    cfg = _aligner_config(args)
    mode = args.predicate_match.replace("-", "_and_")
    alignments = run.alignments(run.pairs, cfg, prefer_gold=False)
    projections = [project_pair(pair, alignments[pair.id]) for pair in run.pairs]

    per_pair = [score_pair(proj, pair.target, mode)
                for pair, proj in zip(run.pairs, projections)]
    merged = merge_counts(per_pair)
    rows = _zero_filled(merged, run.inventory)
    overall = aggregate(merged)
    tsv, js = _scores_tables(rows, overall)
    run.emit("scores.tsv", tsv)
    run.emit("scores.json", js)

    # frame diff against gold, tagged with target-side divergence categories
    swapped = [pair.swapped() for pair in run.pairs]
    reverse_store = ({k: (t, s) for k, (s, t) in run.embeddings.items()}
                     if run.embeddings else None)
    reverse_alignments = run.alignments(swapped, cfg, prefer_gold=True,
                                        embeddings=reverse_store)
    diff_lines = ["pair_id\ttoken\tverb\tprojected\tgold\tcategory"]
    for pair, rev, proj in zip(run.pairs, swapped, projections):
        categories = {}
        for pred in rev.source.predicates:
            rec = classify_predicate(rev, pred, reverse_alignments[rev.id])
            categories[pred.token_index] = rec.category
        for rec in diff_projected_frames(proj, pair.target, categories):
            diff_lines.append(f"{pair.id}\t{rec.target_token}\t{rec.verb}"
                              f"\t{rec.projected_frame or ''}\t{rec.gold_frame or ''}"
                              f"\t{rec.category if rec.category is not None else ''}")
    run.emit("framediff.tsv", "\n".join(diff_lines) + "\n")
    run.write_manifest("evaluate", started,
                       {"aligner": _cfg_obj(cfg), "predicate_match": mode})
    return 0


def cmd_divergence(args: argparse.Namespace) -> int:
    started = time.monotonic()
    run = _Run(args)
    cfg = _aligner_config(args)
    alignments = run.alignments(run.pairs, cfg, prefer_gold=True)
    records = classify_corpus(run.pairs, alignments, run.stoplist)
    report = distribution(run.pairs, run.direction, records, run.stoplist)

    rec_lines = ["pair_id\tpredicate\ttoken\tsurface\tframe\tcategory\ttarget_token\tsubtype\ttarget_frame"]
    for r in records:
        rec_lines.append(
            f"{r.pair_id}\t{r.predicate_index}\t{r.token_index}\t{r.surface}\t{r.frame}"
            f"\t{r.category}\t{'' if r.target_token is None else r.target_token}"
            f"\t{r.subtype or ''}\t{r.target_frame or ''}")
    run.emit("records.tsv", "\n".join(rec_lines) + "\n")

    sub_lines = ["subtype,count"] + [f"{s},{report.subtype_counts[s]}" for s in SUBTYPES]
    run.emit("subtypes.csv", "\n".join(sub_lines) + "\n")

    untl = untranslated_verb_table(records)
    run.emit("untranslated.tsv",
             "\n".join(["surface\tcount"] + [f"{s}\t{n}" for s, n in untl]) + "\n")

    run.emit("divergence.json", json.dumps(_report_obj(report), sort_keys=True,
                                           ensure_ascii=False, indent=2) + "\n")
    run.write_manifest("divergence", started, {"aligner": _cfg_obj(cfg)})
    return 0


def _report_obj(report) -> dict:
    usage = report.frame_usage
    return {
        "direction": report.direction,
        "total_predicates": report.total,
        "categories": {str(c): {"count": report.category_counts[c],
                                "percent": report.category_percentages[c]}
                       for c in (1, 2, 3, 4)},
        "non_verbal": {"subtypes": report.subtype_counts,
                       "nominal": report.nominal_count,
                       "non_nominal": report.non_nominal_count},
        "sentence_comparison": {
            "source_more": report.comparison.source_gt,
            "equal": report.comparison.equal,
            "source_fewer": report.comparison.source_lt,
        },
        "verbs_per_sentence": {lang: {str(k): v for k, v in hist.items()}
                               for lang, hist in report.comparison.histograms.items()},
        "totals_by_lang": report.totals_by_lang,
        "frames": {
            "only": usage.only,
            "shared": [{"frame": f, "counts": c} for f, c in usage.shared],
        },
        "untranslated": [{"surface": s, "count": n} for s, n in report.untranslated],
    }


def cmd_stats(args: argparse.Namespace) -> int:
    started = time.monotonic()
    run = _Run(args)
    comparison = verb_count_comparison(run.pairs, run.stoplist)
    usage = frame_inventory_diff(run.pairs, run.stoplist)

    langs = sorted(comparison.histograms)
    max_bin = max((max(h) for h in comparison.histograms.values() if h), default=0)
    csv_lines = ["verbs," + ",".join(langs)]
    for k in range(max_bin + 1):
        row = [str(k)] + [str(comparison.histograms.get(lang, {}).get(k, 0)) for lang in langs]
        csv_lines.append(",".join(row))
    run.emit("verbs_per_sentence.csv", "\n".join(csv_lines) + "\n")

    a, b = usage.langs
    frame_lines = [f"frame\tscope\t{a}\t{b}"]
    for f, counts in usage.shared:
        frame_lines.append(f"{f}\tshared\t{counts[a]}\t{counts[b]}")
    for lang in (a, b):
        for f in usage.only[lang]:
            frame_lines.append(
                f"{f}\tonly:{lang}\t{usage.counts[a].get(f, 0)}\t{usage.counts[b].get(f, 0)}")
    run.emit("frames.tsv", "\n".join(frame_lines) + "\n")

    total = comparison.source_gt + comparison.equal + comparison.source_lt
    stats = {
        "pairs": total,
        "sentence_comparison": {
            "source_more": comparison.source_gt,
            "equal": comparison.equal,
            "source_fewer": comparison.source_lt,
            "source_more_unrounded_percent": 100.0 * comparison.source_gt / total if total else 0.0,
        },
        "verbs_per_sentence": {lang: {str(k): v for k, v in hist.items()}
                               for lang, hist in comparison.histograms.items()},
        "totals_by_lang": usage.totals,
        "frames_only": usage.only,
        "shared_frames": [{"frame": f, "counts": c} for f, c in usage.shared],
    }
    run.emit("stats.json", json.dumps(stats, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    run.write_manifest("stats", started, {})
    return 0


_COMMANDS = {"project": cmd_project, "evaluate": cmd_evaluate,
             "divergence": cmd_divergence, "stats": cmd_stats}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CrossprojError, OSError) as exc:
        print(f"crossproj: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
