"""Domain types for annotated parallel corpora and their JSON-lines format."""

from __future__ import annotations

import io
import json
import re
import unicodedata
from dataclasses import dataclass, replace
from typing import IO, Iterable

from .errors import (
    InvalidRecord,
    MalformedJson,
    SpanOutOfRange,
    UnknownFrame,
    UnknownRole,
)
from .inventory import FrameInventory

POS_TAGS = ("VERB", "NOUN", "ADJ", "ADV", "ADP", "AUX", "PART", "OTHER")
_SENSE_RE = re.compile(r"^bn:\d{8}v$")


@dataclass(frozen=True, slots=True)
class Token:
    index: int
    surface: str
    pos: str


@dataclass(frozen=True, slots=True)
class Predicate:
    token_index: int
    frame: str
    sense: str | None = None


@dataclass(frozen=True, slots=True)
class Argument:
    predicate_index: int
    role: str
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True, slots=True)
class Sentence:
    lang: str
    tokens: tuple[Token, ...]
    predicates: tuple[Predicate, ...] = ()
    arguments: tuple[Argument, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    def predicate_at(self, token_index: int) -> Predicate | None:
        for pred in self.predicates:
            if pred.token_index == token_index:
                return pred
        return None

    def arguments_of(self, predicate_index: int) -> tuple[Argument, ...]:
        return tuple(a for a in self.arguments if a.predicate_index == predicate_index)


@dataclass(frozen=True, slots=True)
class SentencePair:
    id: str
    source: Sentence
    target: Sentence
    gold_alignment: tuple[tuple[int, int], ...] | None = None

    def swapped(self) -> "SentencePair":
        """Same pair with source and target (and alignment) exchanged."""
        flipped = None
        if self.gold_alignment is not None:
            flipped = tuple(sorted((t, s) for s, t in self.gold_alignment))
        return SentencePair(self.id, self.target, self.source, flipped)

    def oriented(self, source_lang: str) -> "SentencePair":
        if self.source.lang == source_lang:
            return self
        if self.target.lang == source_lang:
            return self.swapped()
        raise InvalidRecord(f"pair {self.id!r} has no sentence in language {source_lang!r}")


@dataclass(frozen=True, slots=True)
class Violation:
    kind: str
    message: str


# -- parsing -----------------------------------------------------------------

def _require(cond: bool, message: str, line: int) -> None:
    if not cond:
        raise InvalidRecord(message, line)


def _parse_sentence(obj: dict, inv: FrameInventory, line: int) -> Sentence:
    _require(isinstance(obj, dict), "sentence must be an object", line)
    for key in ("lang", "tokens", "predicates", "arguments"):
        _require(key in obj, f"sentence missing {key!r}", line)
    lang = obj["lang"]
    _require(isinstance(lang, str) and lang, "lang must be a non-empty string", line)

    tokens = []
    for i, tok in enumerate(obj["tokens"]):
        _require(isinstance(tok, dict), "token must be an object", line)
        surface = tok.get("surface")
        pos = tok.get("pos")
        _require(isinstance(surface, str) and surface != "", "token surface must be non-empty", line)
        _require(pos in POS_TAGS, f"unknown pos tag {pos!r}", line)
        tokens.append(Token(i, unicodedata.normalize("NFC", surface), pos))
    n = len(tokens)
    _require(n > 0, "sentence has no tokens", line)

    predicates = []
    seen_tokens = set()
    for pred in obj["predicates"]:
        _require(isinstance(pred, dict), "predicate must be an object", line)
        idx = pred.get("token")
        _require(isinstance(idx, int) and 0 <= idx < n, f"predicate token {idx!r} out of range", line)
        _require(idx not in seen_tokens, f"duplicate predicate at token {idx}", line)
        seen_tokens.add(idx)
        frame = pred.get("frame")
        _require(isinstance(frame, str), "predicate frame must be a string", line)
        canon = inv.canonical_frame(frame)
        if canon is None:
            raise UnknownFrame(frame, line)
        sense = pred.get("sense")
        if sense is not None:
            _require(isinstance(sense, str) and bool(_SENSE_RE.match(sense)),
                     f"malformed sense id {sense!r}", line)
        predicates.append(Predicate(idx, canon, sense))

    arguments = []
    for arg in obj["arguments"]:
        _require(isinstance(arg, dict), "argument must be an object", line)
        pi = arg.get("predicate")
        _require(isinstance(pi, int) and 0 <= pi < len(predicates),
                 f"argument predicate index {pi!r} out of range", line)
        role = arg.get("role")
        _require(isinstance(role, str), "argument role must be a string", line)
        canon_role = inv.canonical_role(role)
        if canon_role is None:
            raise UnknownRole(role, line)
        start, end = arg.get("start"), arg.get("end")
        _require(isinstance(start, int) and isinstance(end, int), "span bounds must be integers", line)
        if not (0 <= start <= end < n):
            raise SpanOutOfRange(f"span [{start}, {end}] invalid for {n} tokens", line)
        own = predicates[pi].token_index
        _require(not (start <= own <= end), f"span [{start}, {end}] covers its own predicate", line)
        arguments.append(Argument(pi, canon_role, start, end))

    return Sentence(lang, tuple(tokens), tuple(predicates), tuple(arguments))


def parse_pair(obj: dict, inv: FrameInventory, line: int = 0) -> SentencePair:
    _require(isinstance(obj, dict), "record must be an object", line)
    for key in ("id", "source", "target"):
        _require(key in obj, f"record missing {key!r}", line)
    pid = obj["id"]
    _require(isinstance(pid, str) and pid != "", "id must be a non-empty string", line)
    source = _parse_sentence(obj["source"], inv, line)
    target = _parse_sentence(obj["target"], inv, line)
    _require(source.lang != target.lang, "source and target share a language", line)

    alignment = None
    raw = obj.get("gold_alignment")
    if raw is not None:
        _require(isinstance(raw, list), "gold_alignment must be a list", line)
        pairs = []
        for item in raw:
            _require(isinstance(item, list) and len(item) == 2, "alignment pair must be [src, tgt]", line)
            s, t = item
            _require(isinstance(s, int) and 0 <= s < len(source), f"alignment source index {s!r} out of range", line)
            _require(isinstance(t, int) and 0 <= t < len(target), f"alignment target index {t!r} out of range", line)
            pairs.append((s, t))
        alignment = tuple(sorted(set(pairs)))
    return SentencePair(pid, source, target, alignment)


def parse_corpus(stream: bytes | IO[bytes], inv: FrameInventory) -> list[SentencePair]:
    """Parse UTF-8 JSON-lines, one sentence pair per line, validating invariants."""
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    pairs = []
    for line_no, raw in enumerate(stream, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise MalformedJson(str(exc), line_no) from exc
        pairs.append(parse_pair(obj, inv, line_no))
    return pairs


# -- serialization -----------------------------------------------------------

def sentence_to_obj(s: Sentence) -> dict:
    return {
        "lang": s.lang,
        "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens],
        "predicates": [{"token": p.token_index, "frame": p.frame, "sense": p.sense}
                       for p in s.predicates],
        "arguments": [{"predicate": a.predicate_index, "role": a.role,
                       "start": a.start, "end": a.end} for a in s.arguments],
    }


def pair_to_obj(pair: SentencePair) -> dict:
    return {
        "id": pair.id,
        "source": sentence_to_obj(pair.source),
        "target": sentence_to_obj(pair.target),
        "gold_alignment": [list(p) for p in pair.gold_alignment]
        if pair.gold_alignment is not None else None,
    }


def dumps_canonical(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def serialize_corpus(pairs: Iterable[SentencePair]) -> bytes:
    """Canonical JSON-lines: sorted keys, compact separators, one pair per line."""
    out = io.StringIO()
    for pair in pairs:
        out.write(dumps_canonical(pair_to_obj(pair)))
        out.write("\n")
    return out.getvalue().encode("utf-8")


# -- inventory validation ----------------------------------------------------

def validate_against_inventory(s: Sentence, inv: FrameInventory, strict: bool = False) -> list[Violation]:
    """Collect inventory violations; empty list means the sentence is clean.

    Strict mode additionally flags roles outside the prototypical argument
    structure of the owning predicate's frame (when one is derivable).
    """
    violations = []
    for i, pred in enumerate(s.predicates):
        if not inv.has_frame(pred.frame):
            violations.append(Violation("unknown_frame", f"predicate {i}: frame {pred.frame!r} not in inventory"))
    for i, arg in enumerate(s.arguments):
        if inv.canonical_role(arg.role) is None:
            violations.append(Violation("unknown_role", f"argument {i}: role {arg.role!r} not in inventory"))
            continue
        if strict and 0 <= arg.predicate_index < len(s.predicates):
            frame = s.predicates[arg.predicate_index].frame
            structure = inv.structure_of(frame)
            if structure is not None and arg.role not in structure:
                violations.append(Violation(
                    "role_outside_structure",
                    f"argument {i}: role {arg.role!r} not in the {frame} argument structure"))
    return violations


def relabel(pair: SentencePair, pair_id: str) -> SentencePair:
    return replace(pair, id=pair_id)
