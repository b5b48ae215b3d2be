"""Group elements, group objects, and the text/JSON formats for both."""

from __future__ import annotations

import json
import math
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class GroupFormatError(ValueError):
    """Raised for malformed group descriptions or element text."""


class ExponentOverflow(ArithmeticError):
    """Raised when an exponent computation leaves signed 64-bit range."""


def _check64(k: int) -> int:
    if not (INT64_MIN <= k <= INT64_MAX):
        raise ExponentOverflow(f"exponent {k} outside signed 64-bit range")
    return k


@dataclass(frozen=True, order=False)
class Element:
    """One group element.

    tag is "fin" (index into a finite group's element list), "int" (the
    additive integer k), "rot" (rotation a^k in the infinite dihedral group),
    or "refl" (reflection a^k t).
    """

    tag: str
    k: int

    def __repr__(self) -> str:
        return f"Element({self.tag!r}, {self.k})"


def element_key(e: Element) -> tuple[int, int]:
    """Canonical sort key: rotations/integers/finite indices first, then reflections."""
    return (1 if e.tag == "refl" else 0, e.k)


_FINITE_KINDS = ("finite-cayley",)
_ALL_KINDS = ("finite-cayley", "integers", "infinite-dihedral")


class Group:
    """A group the engine can compute in.

    Three kinds:
      * "finite-cayley"     -- explicit multiplication table over n names
      * "integers"          -- (Z, +) with 64-bit overflow checking
      * "infinite-dihedral" -- <a, t | t^2 = 1, a t = t a^-1>

    The finite built-ins (cyclic, dihedral, elementary abelian 2-groups) are
    finite-cayley groups with a `family` note so parsers and printers can use
    the natural element names.
    """

    def __init__(
        self,
        kind: str,
        label: str,
        *,
        names: tuple[str, ...] | None = None,
        table: tuple[tuple[int, ...], ...] | None = None,
        family: tuple | None = None,
    ):
        if kind not in _ALL_KINDS:
            raise GroupFormatError(f"unknown group kind {kind!r}")
        self.kind = kind
        self.label = label
        self.family = family
        self.names = names
        self.table = table
        self._name_to_index: dict[str, int] = {}
        self._inverse: tuple[int, ...] | None = None
        self.identity_index: int | None = None
        if kind == "finite-cayley":
            if names is None or table is None:
                raise GroupFormatError("finite-cayley group needs names and table")
            self._validate_table()
            self._name_to_index = {nm: i for i, nm in enumerate(names)}

    # -- construction-time checks -------------------------------------------

    def _validate_table(self) -> None:
        names, table = self.names, self.table
        n = len(names)
        if len(set(names)) != n or n == 0:
            raise GroupFormatError("element names must be nonempty and distinct")
        if len(table) != n or any(len(row) != n for row in table):
            raise GroupFormatError("multiplication table must be n x n")
        full = set(range(n))
        for i, row in enumerate(table):
            if set(row) != full:
                raise GroupFormatError(f"row {i} is not a permutation of the elements")
        for j in range(n):
            if {table[i][j] for i in range(n)} != full:
                raise GroupFormatError(f"column {j} is not a permutation of the elements")
        ident = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
        if len(ident) != 1:
            raise GroupFormatError("table has no two-sided identity")
        self.identity_index = ident[0]
        inv = [-1] * n
        for x in range(n):
            two_sided = [y for y in range(n) if table[x][y] == self.identity_index and table[y][x] == self.identity_index]
            if len(two_sided) != 1:
                raise GroupFormatError(f"element {names[x]!r} has no two-sided inverse")
            inv[x] = two_sided[0]
        self._inverse = tuple(inv)

    # -- basic operations ----------------------------------------------------

    def identity(self) -> Element:
        if self.kind == "finite-cayley":
            return Element("fin", self.identity_index)
        if self.kind == "integers":
            return Element("int", 0)
        return Element("rot", 0)

    def mul(self, x: Element, y: Element) -> Element:
        if self.kind == "finite-cayley":
            return Element("fin", self.table[x.k][y.k])
        if self.kind == "integers":
            return Element("int", _check64(x.k + y.k))
        # infinite dihedral: rot(a)rot(b)=rot(a+b), rot(a)refl(b)=refl(a+b),
        # refl(a)rot(b)=refl(a-b), refl(a)refl(b)=rot(a-b)
        if x.tag == "rot":
            return Element(y.tag, _check64(x.k + y.k))
        return Element("rot" if y.tag == "refl" else "refl", _check64(x.k - y.k))

    def inverse(self, x: Element) -> Element:
        if self.kind == "finite-cayley":
            return Element("fin", self._inverse[x.k])
        if self.kind == "integers":
            return Element("int", _check64(-x.k))
        if x.tag == "refl":
            return x
        return Element("rot", _check64(-x.k))

    def order(self) -> int | None:
        """Number of elements, or None for the infinite kinds."""
        return len(self.names) if self.kind == "finite-cayley" else None

    def elements(self) -> list[Element]:
        if self.kind != "finite-cayley":
            raise GroupFormatError(f"cannot list the elements of a {self.kind} group")
        return [Element("fin", i) for i in range(len(self.names))]

    def is_abelian(self) -> bool:
        if self.kind == "integers":
            return True
        if self.kind == "infinite-dihedral":
            return False
        t = self.table
        n = len(t)
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))

    def contains(self, e: Element) -> bool:
        if self.kind == "finite-cayley":
            return e.tag == "fin" and 0 <= e.k < len(self.names)
        if self.kind == "integers":
            return e.tag == "int"
        return e.tag in ("rot", "refl")

    # -- derived subgroup ----------------------------------------------------

    def commutator_subgroup(self) -> set[Element]:
        """The derived subgroup of a finite group, as a set of elements."""
        if self.kind != "finite-cayley":
            raise GroupFormatError("commutator_subgroup needs a finite group")
        n = len(self.names)
        t, inv = self.table, self._inverse
        gens = {t[t[x][y]][t[inv[x]][inv[y]]] for x in range(n) for y in range(n)}
        closure = {self.identity_index} | gens
        frontier = list(closure)
        while frontier:
            x = frontier.pop()
            for y in list(closure):
                for z in (t[x][y], t[y][x]):
                    if z not in closure:
                        closure.add(z)
                        frontier.append(z)
        return {Element("fin", i) for i in closure}

    def in_derived_subgroup(self, e: Element) -> bool:
        """Membership in the derived subgroup, for any kind."""
        if self.kind == "integers":
            return e.k == 0
        if self.kind == "infinite-dihedral":
            return e.tag == "rot" and e.k % 2 == 0
        if not hasattr(self, "_derived_cache"):
            self._derived_cache = {x.k for x in self.commutator_subgroup()}
        return e.k in self._derived_cache

    def __repr__(self) -> str:
        return f"<Group {self.label}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return (self.kind, self.names, self.table, self.family) == (
            other.kind,
            other.names,
            other.table,
            other.family,
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.names, self.family))


# -- built-in families --------------------------------------------------------


@lru_cache(maxsize=None)
def cyclic(n: int) -> Group:
    """The cyclic group of order n with elements e, g, g^2, ..."""
    if n < 1:
        raise GroupFormatError("cyclic group order must be >= 1")
    names = tuple("e" if i == 0 else ("g" if i == 1 else f"g^{i}") for i in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return Group("finite-cayley", f"C{n}", names=names, table=table, family=("cyclic", n))


@lru_cache(maxsize=None)
def finite_dihedral(n: int) -> Group:
    """The dihedral group of order 2n: indices 0..n-1 rotations, n..2n-1 reflections."""
    if n < 1:
        raise GroupFormatError("dihedral parameter must be >= 1")

    def nm(i: int) -> str:
        if i < n:
            return "e" if i == 0 else ("a" if i == 1 else f"a^{i}")
        j = i - n
        return "t" if j == 0 else ("a*t" if j == 1 else f"a^{j}*t")

    def prod(i: int, j: int) -> int:
        ri, fi = i % n, i >= n
        rj, fj = j % n, j >= n
        if not fi:
            r = (ri + rj) % n
            return r + (n if fj else 0)
        r = (ri - rj) % n
        return r if fj else r + n

    names = tuple(nm(i) for i in range(2 * n))
    table = tuple(tuple(prod(i, j) for j in range(2 * n)) for i in range(2 * n))
    return Group("finite-cayley", f"D{n}", names=names, table=table, family=("finite-dihedral", n))


@lru_cache(maxsize=None)
def elementary_two(r: int) -> Group:
    """The elementary abelian 2-group of rank r, elements as bitmasks."""
    if r < 0:
        raise GroupFormatError("rank must be >= 0")
    n = 1 << r

    def nm(mask: int) -> str:
        if mask == 0:
            return "e"
        return "*".join(f"x{b + 1}" for b in range(r) if mask >> b & 1)

    names = tuple(nm(m) for m in range(n))
    table = tuple(tuple(i ^ j for j in range(n)) for i in range(n))
    return Group("finite-cayley", f"C2^{r}", names=names, table=table, family=("elementary-2", r))


@lru_cache(maxsize=None)
def integers() -> Group:
    return Group("integers", "Z")


@lru_cache(maxsize=None)
def infinite_dihedral() -> Group:
    return Group("infinite-dihedral", "Dinf")


def from_cayley(names, table, label: str = "G") -> Group:
    """Build a finite group from an explicit multiplication table (validated)."""
    return Group(
        "finite-cayley",
        label,
        names=tuple(names),
        table=tuple(tuple(row) for row in table),
    )


# -- parsing ------------------------------------------------------------------


def parse_group(source) -> Group:
    """Parse a group description: a dict, a JSON string, or a path to a JSON file."""
    if isinstance(source, Group):
        return source
    if isinstance(source, str):
        text = source.strip()
        if not text.startswith("{") and os.path.exists(text):
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GroupFormatError(f"not valid JSON and not a file path: {exc}") from exc
    elif isinstance(source, dict):
        data = source
    else:
        raise GroupFormatError(f"cannot parse a group from {type(source).__name__}")
    if not isinstance(data, dict) or "kind" not in data:
        raise GroupFormatError("group description must be an object with a 'kind'")
    kind = data["kind"]
    if kind == "cyclic":
        return cyclic(_want_int(data, "n"))
    if kind == "finite-dihedral":
        return finite_dihedral(_want_int(data, "n"))
    if kind == "elementary-2":
        return elementary_two(_want_int(data, "rank"))
    if kind == "integers":
        return integers()
    if kind == "infinite-dihedral":
        return infinite_dihedral()
    if kind == "finite-cayley":
        if "names" not in data or "table" not in data:
            raise GroupFormatError("finite-cayley needs 'names' and 'table'")
        return from_cayley(data["names"], data["table"], label=data.get("label", "G"))
    raise GroupFormatError(f"unknown group kind {kind!r}")


def _want_int(data: dict, key: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise GroupFormatError(f"field {key!r} must be an integer")
    return v


_CYCLIC_ELT = re.compile(r"^g(?:\^(-?\d+))?$")
_DIHEDRAL_ROT = re.compile(r"^a(?:\^(-?\d+))?$")
_DIHEDRAL_REFL = re.compile(r"^(?:a(?:\^(-?\d+))?\*)?t$")
_INT_ELT = re.compile(r"^-?\d+$")


def parse_element(group: Group, text) -> Element:
    """Parse one element in the group's own notation.

    Cyclic: "e", "g", "g^3".  Dihedral (finite or infinite): "e", "a", "a^-2",
    "t", "a*t", "a^3*t".  Integers: decimal literals.  Other finite groups:
    the element's listed name.
    """
    if isinstance(text, Element):
        if not group.contains(text):
            raise GroupFormatError(f"element {text!r} is not in {group.label}")
        return text
    if not isinstance(text, str):
        raise GroupFormatError(f"cannot parse an element from {type(text).__name__}")
    s = text.strip()
    if group.kind == "integers":
        if not _INT_ELT.match(s):
            raise GroupFormatError(f"{s!r} is not an integer")
        return Element("int", _check64(int(s)))
    if group.kind == "infinite-dihedral":
        if s == "e":
            return Element("rot", 0)
        m = _DIHEDRAL_ROT.match(s)
        if m:
            return Element("rot", _check64(int(m.group(1) or 1)))
        m = _DIHEDRAL_REFL.match(s)
        if m:
            k = 0 if m.group(0) == "t" else int(m.group(1) or 1)
            return Element("refl", _check64(k))
        raise GroupFormatError(f"{s!r} is not an infinite-dihedral element")
    fam = group.family
    if fam and fam[0] == "cyclic":
        n = fam[1]
        if s == "e":
            return Element("fin", 0)
        m = _CYCLIC_ELT.match(s)
        if m:
            return Element("fin", int(m.group(1) or 1) % n)
    if fam and fam[0] == "finite-dihedral":
        n = fam[1]
        if s == "e":
            return Element("fin", 0)
        m = _DIHEDRAL_ROT.match(s)
        if m:
            return Element("fin", int(m.group(1) or 1) % n)
        m = _DIHEDRAL_REFL.match(s)
        if m:
            k = 0 if m.group(0) == "t" else int(m.group(1) or 1)
            return Element("fin", n + k % n)
    if s in group._name_to_index:
        return Element("fin", group._name_to_index[s])
    raise GroupFormatError(f"{s!r} is not an element of {group.label}")


def element_text(group: Group, e: Element) -> str:
    """Render an element back to its canonical text form."""
    if group.kind == "integers":
        return str(e.k)
    if group.kind == "infinite-dihedral":
        if e.tag == "rot":
            return "e" if e.k == 0 else ("a" if e.k == 1 else f"a^{e.k}")
        return "t" if e.k == 0 else ("a*t" if e.k == 1 else f"a^{e.k}*t")
    return group.names[e.k]
