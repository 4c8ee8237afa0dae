"""Frame and role inventory with strict argument-structure validation."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import InvalidRecord

# Definitions written as a prototypical structure embed the frame name in
# caps ("An agent SPEAKS about a topic ..."); plain glosses never do.
_STRUCTURE_MARKER = re.compile(r"\b[A-Z][A-Z-]{2,}\b")


def _canon_frame(label: str) -> str:
    return label.strip().upper().replace("-", "_")


@dataclass(frozen=True)
class FrameInventory:
    frames: dict[str, str]
    roles: dict[str, str]
    # canonical lookup: hyphen/underscore variants map to one bundled key
    _frame_keys: dict[str, str] = field(default_factory=dict, repr=False)
    _structures: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)

    @classmethod
    def from_mapping(cls, frames: dict[str, str], roles: dict[str, str]) -> "FrameInventory":
        frame_keys = {}
        for label in frames:
            key = _canon_frame(label)
            if key in frame_keys:
                raise InvalidRecord(f"frame labels {frame_keys[key]!r} and {label!r} collide")
            frame_keys[key] = label
        role_pattern = re.compile(
            r"\b(" + "|".join(sorted(map(re.escape, roles), key=len, reverse=True)) + r")\b",
            re.IGNORECASE,
        )
        structures = {}
        for label, definition in frames.items():
            if _STRUCTURE_MARKER.search(definition):
                found = {m.group(1).lower() for m in role_pattern.finditer(definition)}
                if found:
                    structures[label] = frozenset(found)
        return cls(dict(frames), dict(roles), frame_keys, structures)

    def canonical_frame(self, label: str) -> str | None:
        """Resolve a frame label to its bundled form, or None if unknown."""
        return self._frame_keys.get(_canon_frame(label))

    def has_frame(self, label: str) -> bool:
        return self.canonical_frame(label) is not None

    def canonical_role(self, label: str) -> str | None:
        role = label.strip().lower()
        return role if role in self.roles else None

    def structure_of(self, frame: str) -> frozenset[str] | None:
        """Prototypical role set of a frame, or None when not derivable."""
        canon = self.canonical_frame(frame)
        return self._structures.get(canon) if canon else None


def load_inventory(path: str | None = None) -> FrameInventory:
    """Load the bundled inventory, or a user-supplied JSON override."""
    if path is None:
        text = resources.files("crossproj.data").joinpath("verbatlas_inventory.json").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    raw = json.loads(text)
    return FrameInventory.from_mapping(raw["frames"], raw["roles"])


def load_light_verbs(path: str | None = None) -> frozenset[str]:
    """Light-verb stoplist: surfaces excluded from predicate counting."""
    if path is None:
        text = resources.files("crossproj.data").joinpath("light_verbs.json").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    raw = json.loads(text)
    return frozenset(s for surfaces in raw.values() for s in surfaces)
