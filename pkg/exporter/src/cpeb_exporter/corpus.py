"""Minimal reader for the JSON-lines corpus format: ids and token surfaces."""

import json
from dataclasses import dataclass


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class PairTokens:
    pair_id: str
    source: list[str]
    target: list[str]


def _surfaces(obj: dict, side: str, line: int) -> list[str]:
    try:
        tokens = obj[side]["tokens"]
        surfaces = [t["surface"] for t in tokens]
    except (KeyError, TypeError) as exc:
        raise CorpusFormatError(f"line {line}: malformed {side} sentence") from exc
    if not surfaces or any(not isinstance(s, str) or not s for s in surfaces):
        raise CorpusFormatError(f"line {line}: empty token surface in {side}")
    return surfaces


def read_corpus_tokens(path: str) -> list[PairTokens]:
    out = []
    with open(path, "rb") as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise CorpusFormatError(f"line {line_no}: {exc}") from exc
            pair_id = obj.get("id")
            if not isinstance(pair_id, str) or not pair_id:
                raise CorpusFormatError(f"line {line_no}: missing id")
            out.append(PairTokens(pair_id,
                                  _surfaces(obj, "source", line_no),
                                  _surfaces(obj, "target", line_no)))
    return out
