"""Ground sets and finite unordered sequences (multisets) over them."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass

from .groups import Element, Group, GroupFormatError, element_key, element_text, parse_element

MULT_MAX = 2**31


class SequenceError(ValueError):
    """Raised for malformed sequences or mismatched ground sets."""


@dataclass(frozen=True)
class GroundSet:
    """A finite subset of a group, kept in canonical element order."""

    group: Group
    elements: tuple[Element, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise SequenceError("ground set elements must be distinct")
        for e in self.elements:
            if not self.group.contains(e):
                raise SequenceError(f"{e!r} is not in {self.group.label}")
        ordered = tuple(sorted(self.elements, key=element_key))
        object.__setattr__(self, "elements", ordered)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(ordered)})

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise SequenceError(f"{element_text(self.group, e)} is not in the ground set") from None

    def __contains__(self, e: Element) -> bool:
        return e in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def text(self) -> str:
        return "{" + ", ".join(element_text(self.group, e) for e in self.elements) + "}"


def ground(group: Group, elems) -> GroundSet:
    """Build a ground set from elements or element text."""
    parsed = tuple(parse_element(group, e) for e in elems)
    return GroundSet(group, tuple(dict.fromkeys(parsed)))


def parse_subset(group: Group, text: str) -> GroundSet:
    """Parse a comma-separated subset like "a^2, a^6, t" (braces optional)."""
    s = text.strip()
    if s.startswith("{") and s.endswith("}"):
        s = s[1:-1]
    parts = [p.strip() for p in s.split(",") if p.strip()]
    if not parts:
        raise SequenceError("empty subset")
    return ground(group, parts)


_TERM = re.compile(r"^(.*?)(?:\^\[(\d+)\])?$")


@dataclass(frozen=True)
class Sequence:
    """An unordered finite sequence over a ground set, as a dense count vector.

    Two sequences compare equal iff they have the same ground set and counts,
    so instances can key memo tables directly.
    """

    ground: GroundSet
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != len(self.ground):
            raise SequenceError("count vector length must match the ground set")
        for c in self.counts:
            if not (0 <= c < MULT_MAX):
                raise SequenceError(f"multiplicity {c} outside [0, 2^31)")

    # -- basic views ----------------------------------------------------------

    def __len__(self) -> int:
        return sum(self.counts)

    def v(self, e: Element) -> int:
        """Multiplicity of e (0 if e is outside the ground set)."""
        return self.counts[self.ground.index(e)] if e in self.ground else 0

    def support(self) -> tuple[Element, ...]:
        return tuple(e for e, c in zip(self.ground.elements, self.counts) if c)

    def terms(self) -> list[Element]:
        """The elements with multiplicity, in canonical order."""
        out: list[Element] = []
        for e, c in zip(self.ground.elements, self.counts):
            out.extend([e] * c)
        return out

    def is_empty(self) -> bool:
        return not any(self.counts)

    def sort_key(self) -> tuple:
        return (len(self), self.counts)

    # -- algebra ---------------------------------------------------------------

    def _need_same_ground(self, other: "Sequence") -> None:
        if self.ground != other.ground:
            raise SequenceError("sequences live over different ground sets")

    def __add__(self, other: "Sequence") -> "Sequence":
        self._need_same_ground(other)
        return Sequence(self.ground, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def subtract(self, other: "Sequence") -> "Sequence":
        self._need_same_ground(other)
        diff = tuple(a - b for a, b in zip(self.counts, other.counts))
        if any(d < 0 for d in diff):
            raise SequenceError("subtrahend is not a subsequence")
        return Sequence(self.ground, diff)

    def divides(self, other: "Sequence") -> bool:
        """Componentwise: is self a subsequence of other?"""
        self._need_same_ground(other)
        return all(a <= b for a, b in zip(self.counts, other.counts))

    def power(self, n: int) -> "Sequence":
        if n < 0:
            raise SequenceError("power must be >= 0")
        return Sequence(self.ground, tuple(c * n for c in self.counts))

    def restricted_to(self, other_ground: GroundSet) -> "Sequence":
        """The same multiset re-expressed over another ground set (must contain the support)."""
        counts = [0] * len(other_ground)
        for e, c in zip(self.ground.elements, self.counts):
            if c:
                counts[other_ground.index(e)] = c
        return Sequence(other_ground, tuple(counts))

    # -- text / JSON -------------------------------------------------------------

    def text(self) -> str:
        if self.is_empty():
            return "[]"
        parts = []
        for e, c in zip(self.ground.elements, self.counts):
            if not c:
                continue
            name = element_text(self.ground.group, e)
            parts.append(name if c == 1 else f"{name}^[{c}]")
        return ", ".join(parts)

    def to_json(self) -> dict:
        return {
            "length": len(self),
            "terms": [
                {"element": element_text(self.ground.group, e), "multiplicity": c}
                for e, c in zip(self.ground.elements, self.counts)
                if c
            ],
        }

    def __repr__(self) -> str:
        return f"Seq({self.text()})"


# -- constructors ---------------------------------------------------------------


def empty(g: GroundSet) -> Sequence:
    return Sequence(g, (0,) * len(g))


def from_pairs(g: GroundSet, pairs) -> Sequence:
    """Build from (element, multiplicity) pairs; elements may repeat."""
    counts = [0] * len(g)
    for e, c in pairs:
        if c < 0:
            raise SequenceError("multiplicity must be >= 0")
        counts[g.index(parse_element(g.group, e))] += c
    for c in counts:
        if c >= MULT_MAX:
            raise SequenceError("multiplicity exceeds 2^31")
    return Sequence(g, tuple(counts))


def parse_sequence(group: Group, text: str, over: GroundSet | None = None) -> Sequence:
    """Parse "a^2, a^6, t^[2]" style text; ground defaults to the support."""
    s = text.strip()
    if s in ("", "[]"):
        if over is None:
            raise SequenceError("an empty sequence needs an explicit ground set")
        return empty(over)
    pairs: list[tuple[Element, int]] = []
    for raw in s.split(","):
        raw = raw.strip()
        if not raw:
            continue
        m = _TERM.match(raw)
        base, mult = m.group(1).strip(), int(m.group(2) or 1)
        if not base:
            raise SequenceError(f"bad term {raw!r}")
        pairs.append((parse_element(group, base), mult))
    if over is None:
        over = GroundSet(group, tuple(dict.fromkeys(e for e, _ in pairs)))
    return from_pairs(over, pairs)


def sequence_from_json(group: Group, data, over: GroundSet | None = None) -> Sequence:
    """Parse the JSON form: a list of {"element": ..., "multiplicity": ...}."""
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict) and "terms" in data:
        data = data["terms"]
    if not isinstance(data, list):
        raise SequenceError("sequence JSON must be a list of terms")
    pairs = []
    for item in data:
        if not isinstance(item, dict) or "element" not in item:
            raise SequenceError("each term needs an 'element'")
        mult = item.get("multiplicity", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise SequenceError("multiplicity must be a positive integer")
        pairs.append((parse_element(group, item["element"]), mult))
    if over is None:
        try:
            over = GroundSet(group, tuple(dict.fromkeys(e for e, _ in pairs)))
        except GroupFormatError as exc:
            raise SequenceError(str(exc)) from exc
    return from_pairs(over, pairs)


def subsequences(s: Sequence, *, proper: bool = False, nonempty: bool = False):
    """Yield all (sub)sequences of s in ascending lexicographic count order."""
    for combo in itertools.product(*[range(c + 1) for c in s.counts]):
        if nonempty and not any(combo):
            continue
        if proper and combo == s.counts:
            continue
        yield Sequence(s.ground, combo)
