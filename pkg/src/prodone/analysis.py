"""Atoms, factorizations, arithmetic invariants, and structural probes of
product-one monoids over a fixed ground set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .certificates import (
    Certificate,
    CompleteUpToLength,
    Exact,
    ExactWithinBound,
    LowerBound,
    TaggedValue,
    WitnessFamily,
)
from .groups import Element
from .products import (
    DP_PAIR_BUDGET,
    BudgetExceeded,
    finite_membership_table,
    is_product_one,
    product_set,
)
from .sequences import GroundSet, Sequence, from_pairs

ATOM_SCAN_DEFAULT = 12
FACTORIZATION_BUDGET = 1_000_000


# -- membership backends ---------------------------------------------------------


def membership_function(ground: GroundSet, max_len: int) -> Callable[[tuple], bool]:
    """A fast count-vector membership test, valid for totals up to max_len."""
    kind = ground.group.kind
    if kind == "integers":
        exps = [e.k for e in ground.elements]

        def member_int(counts: tuple) -> bool:
            return sum(c * k for c, k in zip(counts, exps)) == 0

        return member_int
    if kind == "infinite-dihedral":
        from . import dihedral

        return dihedral.membership_oracle(ground)
    m = len(ground)
    if comb(max_len + m, m) <= 300_000:
        table = finite_membership_table(ground, max_len)
        return lambda counts: table[counts]
    memo: dict[tuple, bool] = {}

    def member_query(counts: tuple) -> bool:
        got = memo.get(counts)
        if got is None:
            got = memo[counts] = is_product_one(Sequence(ground, counts))
        return got

    return member_query


def _count_vectors(m: int, max_size: int):
    """All count vectors of length m with total <= max_size, ordered by
    (total, lexicographic)."""

    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for size in range(max_size + 1):
        yield from compositions(size, m)


# -- atoms -------------------------------------------------------------------------


@dataclass(frozen=True)
class AtomInventory:
    """The atoms over a ground set, sorted by (length, counts)."""

    ground: GroundSet
    atoms: tuple[Sequence, ...]
    certificate: Certificate

    def covers_length(self, length: int) -> bool:
        """Does this inventory contain every atom of length <= length?"""
        if isinstance(self.certificate, Exact):
            return True
        if isinstance(self.certificate, CompleteUpToLength):
            return length <= self.certificate.bound
        return False

    def max_length(self) -> int:
        return max((len(a) for a in self.atoms), default=0)

    def to_json(self) -> dict:
        return {
            "ground": self.ground.text(),
            "count": len(self.atoms),
            "atoms": [a.to_json() for a in self.atoms],
            "certificate": self.certificate.to_json(),
        }


def is_atom(s: Sequence, member: Callable[[tuple], bool] | None = None) -> bool:
    """Is S a minimal nonempty product-one sequence?  Raises if S is not
    product-one at all."""
    if member is None:
        mem = lambda counts: is_product_one(Sequence(s.ground, counts))
    else:
        mem = member
    if len(s) == 0:
        raise ValueError("the empty sequence is not an atom candidate")
    if not mem(s.counts):
        raise ValueError("sequence is not product-one")
    return not _splits(s.counts, mem)


def _splits(counts: tuple, member: Callable[[tuple], bool]) -> bool:
    """Does the vector split as (product-one) + (product-one), both nonempty?"""
    for sub in itertools.product(*[range(c + 1) for c in counts]):
        if not any(sub) or sub == tuple(counts):
            continue
        if member(sub) and member(tuple(c - x for c, x in zip(counts, sub))):
            return True
    return False


def _sorted_atoms(ground: GroundSet, vectors) -> tuple[Sequence, ...]:
    seqs = [Sequence(ground, tuple(v)) for v in set(vectors)]
    seqs.sort(key=lambda s: s.sort_key())
    return tuple(seqs)


def _abelian_atoms(ground: GroundSet) -> tuple[Sequence, ...]:
    """Atoms over a finite abelian group: grow product-one-free multisets one
    element at a time (valid because removing one element from a minimal
    product-one multiset always leaves a product-one-free one), then close
    each with the inverse of its sum."""
    group = ground.group
    elems = ground.elements
    m = len(elems)
    ident = group.identity()
    zero = (0,) * m
    # frontier entries: counts -> (sum element, frozenset of nonempty subset sums)
    frontier: dict[tuple, tuple[Element, frozenset]] = {zero: (ident, frozenset())}
    atoms: set[tuple] = set()
    while frontier:
        for vec, (sigma, sums) in frontier.items():
            want = group.inverse(sigma)
            j = ground.index(want) if want in ground else None
            if j is not None:
                atom = vec[:j] + (vec[j] + 1,) + vec[j + 1 :]
                atoms.add(atom)
        nxt: dict[tuple, tuple[Element, frozenset]] = {}
        for vec, (sigma, sums) in frontier.items():
            for i, e in enumerate(elems):
                if e == ident or group.inverse(e) in sums:
                    continue  # adding e would close a product-one subsequence
                child = vec[:i] + (vec[i] + 1,) + vec[i + 1 :]
                if child not in nxt:
                    new_sums = frozenset(
                        {group.mul(x, e) for x in sums} | {e} | sums
                    )
                    nxt[child] = (group.mul(sigma, e), new_sums)
        frontier = nxt
    return _sorted_atoms(ground, atoms)


def _finite_scan_atoms(ground: GroundSet, bound: int) -> tuple[Sequence, ...]:
    """Atoms over a finite group by scanning all multisets of size <= bound.

    A product of more than |G| elements always has, in a product-one ordering,
    two equal partial products, so it splits into two shorter product-one
    parts; hence every atom has length <= |G| and a scan to |G| is complete.
    """
    member = membership_function(ground, bound)
    out = []
    for vec in _count_vectors(len(ground), bound):
        if any(vec) and member(vec) and not _splits(vec, member):
            out.append(vec)
    return _sorted_atoms(ground, out)


def _integer_atom_vectors(exps: list[int]) -> list[tuple[int, ...]]:
    """Minimal nonzero nonnegative solutions of sum(exps[i] * x[i]) = 0.

    Components of minimal solutions are bounded by the largest coefficient of
    the opposite sign, so a box scan plus a domination filter is complete."""
    m = len(exps)
    max_pos = max((k for k in exps if k > 0), default=0)
    max_neg = max((-k for k in exps if k < 0), default=0)
    bounds = []
    for k in exps:
        if k == 0:
            bounds.append(1)
        elif k > 0:
            bounds.append(max_neg)
        else:
            bounds.append(max_pos)
    box = 1
    for b in bounds:
        box *= b + 1
    if box > DP_PAIR_BUDGET:
        raise BudgetExceeded(f"minimal-solution box has {box} points")
    sols = []
    for vec in itertools.product(*[range(b + 1) for b in bounds]):
        if any(vec) and sum(c * k for c, k in zip(vec, exps)) == 0:
            if not any(k == 0 for k, c in zip(exps, vec) if c):
                sols.append(vec)
    sols.sort(key=lambda v: (sum(v), v))
    minimal = []
    for v in sols:
        if not any(all(x <= y for x, y in zip(w, v)) for w in minimal):
            minimal.append(v)
    out = list(minimal)
    for i, k in enumerate(exps):  # identity elements are atoms on their own
        if k == 0:
            out.append(tuple(1 if j == i else 0 for j in range(m)))
    return out


def enumerate_atoms(
    ground: GroundSet,
    max_len: int | None = None,
    *,
    method: str = "auto",
) -> AtomInventory:
    """The atom inventory over a ground set.

    Finite groups and pure-rotation / integer grounds get exact inventories.
    Infinite-dihedral grounds get closed forms where one exists (at most three
    reflections and nothing else; one rotation with one reflection), otherwise
    a scan complete up to max_len."""
    if method not in ("auto", "scan", "closed-form"):
        raise ValueError(f"unknown method {method!r}")
    kind = ground.group.kind
    if kind == "finite-cayley":
        order = ground.group.order()
        bound = order if max_len is None else min(max_len, order)
        if method != "scan" and ground.group.is_abelian() and bound == order:
            atoms = _abelian_atoms(ground)
        else:
            atoms = _finite_scan_atoms(ground, bound)
        cert = Exact() if bound == order else CompleteUpToLength(bound)
        if max_len is not None:
            atoms = tuple(a for a in atoms if len(a) <= max_len)
        return AtomInventory(ground, atoms, cert)
    if kind == "integers":
        exps = [e.k for e in ground.elements]
        vectors = _integer_atom_vectors(exps)
        atoms = _sorted_atoms(ground, vectors)
        if max_len is not None:
            atoms = tuple(a for a in atoms if len(a) <= max_len)
        return AtomInventory(ground, atoms, Exact())
    return _dihedral_atoms(ground, max_len, method)


def _dihedral_atoms(ground: GroundSet, max_len: int | None, method: str) -> AtomInventory:
    from . import dihedral

    rots, refls, has_id = dihedral._shape(ground)
    ident_atoms = (
        [from_pairs(ground, [(Element("rot", 0), 1)])] if has_id else []
    )
    if not refls:
        vectors = _integer_atom_vectors([e.k for e in ground.elements])
        atoms = _sorted_atoms(ground, vectors)
        if max_len is not None:
            atoms = tuple(a for a in atoms if len(a) <= max_len)
        return AtomInventory(ground, atoms, Exact())
    closed: list[Sequence] | None = None
    if not rots and len(refls) <= 2:
        closed = dihedral.two_reflection_atoms(ground)
    elif not rots and len(refls) == 3:
        closed = dihedral.three_reflection_atoms(ground)
    if closed is not None and method != "scan":
        atoms = tuple(sorted(ident_atoms + closed, key=lambda s: s.sort_key()))
        if max_len is not None:
            atoms = tuple(a for a in atoms if len(a) <= max_len)
        return AtomInventory(ground, atoms, Exact())
    if rots and len(refls) == 1 and len(rots) == 1 and method != "scan":
        if max_len is None:
            raise ValueError(
                "the atom family over a rotation and a reflection is infinite; give max_len"
            )
        closed = ident_atoms + dihedral.rotation_reflection_atoms(ground, max_len)
        atoms = tuple(sorted(closed, key=lambda s: s.sort_key()))
        return AtomInventory(ground, atoms, CompleteUpToLength(max_len))
    if max_len is None:
        if method == "closed-form":
            raise ValueError("no closed-form inventory for this ground set")
        raise ValueError("this ground set needs max_len for a scan inventory")
    member = membership_function(ground, max_len)
    out = []
    for vec in _count_vectors(len(ground), max_len):
        if any(vec) and member(vec) and not _splits(vec, member):
            out.append(vec)
    return AtomInventory(ground, _sorted_atoms(ground, out), CompleteUpToLength(max_len))


# -- Davenport constants --------------------------------------------------------------


@dataclass(frozen=True)
class DavenportResult:
    """The largest atom length over a ground set, with its status."""

    status: str  # "exact" | "lower-bound" | "infinite"
    value: TaggedValue | None
    witness: WitnessFamily | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"status": self.status, "detail": self.detail}
        if self.value is not None:
            out["value"] = self.value.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def davenport(ground: GroundSet, max_len: int | None = None) -> DavenportResult:
    """The Davenport constant: the supremum of atom lengths over the ground set."""
    kind = ground.group.kind
    if kind in ("finite-cayley", "integers"):
        inv = enumerate_atoms(ground)
        return DavenportResult(
            "exact",
            TaggedValue(inv.max_length(), Exact()),
            detail={"atoms": len(inv.atoms)},
        )
    from . import dihedral

    rots, refls, _ = dihedral._shape(ground)
    if rots and refls:
        fam = dihedral.infinite_atom_family(ground)
        return DavenportResult(
            "infinite",
            None,
            witness=WitnessFamily(fam[0], fam[1]),
            detail={"reason": "a rotation and a reflection support atoms of every even length"},
        )
    if not refls:  # pure rotations reduce to integer exponents
        inv = enumerate_atoms(ground)
        return DavenportResult(
            "exact", TaggedValue(inv.max_length(), Exact()), detail={"atoms": len(inv.atoms)}
        )
    if len(refls) <= 3:
        inv = enumerate_atoms(ground)
        return DavenportResult(
            "exact", TaggedValue(inv.max_length(), Exact()), detail={"atoms": len(inv.atoms)}
        )
    bound = max_len if max_len is not None else ATOM_SCAN_DEFAULT
    inv = enumerate_atoms(ground, max_len=bound)
    return DavenportResult(
        "lower-bound",
        TaggedValue(inv.max_length(), LowerBound(bound)),
        detail={"scanned_to": bound, "atoms_found": len(inv.atoms)},
    )


# -- factorizations ---------------------------------------------------------------------


@dataclass(frozen=True)
class FactorizationSet:
    """All factorizations of one sequence into atoms, as index multisets."""

    target: Sequence
    inventory: AtomInventory
    factorizations: tuple[tuple[int, ...], ...]

    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(z) for z in self.factorizations}))

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "lengths": list(self.lengths()),
            "count": len(self.factorizations),
            "factorizations": [
                [self.inventory.atoms[i].text() for i in z] for z in self.factorizations
            ],
        }


def factorizations(
    s: Sequence,
    inventory: AtomInventory | None = None,
    member: Callable[[tuple], bool] | None = None,
) -> FactorizationSet:
    """Every factorization of S into atoms (as sorted atom-index tuples)."""
    if inventory is None:
        inventory = enumerate_atoms(s.ground, max_len=len(s))
    if not inventory.covers_length(len(s)):
        raise ValueError("atom inventory does not cover the target's length")
    if member is None:
        member = membership_function(s.ground, len(s))
    if not member(s.counts):
        raise ValueError("target is not product-one")
    atoms = [a.counts for a in inventory.atoms]
    found: list[tuple[int, ...]] = []

    def peel(remaining: tuple, min_idx: int, chosen: tuple):
        if not any(remaining):
            found.append(chosen)
            if len(found) > FACTORIZATION_BUDGET:
                raise BudgetExceeded("too many factorizations")
            return
        for idx in range(min_idx, len(atoms)):
            vec = atoms[idx]
            if all(x <= r for x, r in zip(vec, remaining)):
                rest = tuple(r - x for r, x in zip(remaining, vec))
                if member(rest):
                    peel(rest, idx, chosen + (idx,))

    peel(tuple(s.counts), 0, ())
    return FactorizationSet(s, inventory, tuple(found))


def set_of_lengths(
    s: Sequence,
    inventory: AtomInventory | None = None,
    member: Callable[[tuple], bool] | None = None,
) -> tuple[int, ...]:
    return factorizations(s, inventory, member).lengths()


def distance(z1: tuple[int, ...], z2: tuple[int, ...]) -> int:
    """Factorization distance: larger length minus the common part."""
    c1: dict[int, int] = {}
    for i in z1:
        c1[i] = c1.get(i, 0) + 1
    common = 0
    c2: dict[int, int] = {}
    for i in z2:
        c2[i] = c2.get(i, 0) + 1
    for i, n in c1.items():
        common += min(n, c2.get(i, 0))
    return max(len(z1), len(z2)) - common


def catenary_degree(facs: FactorizationSet) -> int:
    """The bottleneck chain distance between factorizations: the largest edge
    of a minimax spanning tree over pairwise distances (0 if fewer than two)."""
    zs = facs.factorizations
    n = len(zs)
    if n <= 1:
        return 0
    edges = sorted(
        (distance(zs[i], zs[j]), i, j) for i in range(n) for j in range(i + 1, n)
    )
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    used = 0
    joined = 0
    for d, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            used = max(used, d)
            joined += 1
            if joined == n - 1:
                break
    return used


# -- sets of lengths over a whole ground set ------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    """Length-set invariants gathered from every product-one sequence of size
    <= max_size over the ground set."""

    ground: GroundSet
    max_size: int
    max_k: int
    delta: tuple[int, ...]
    u_k: dict[int, tuple[int, ...]]
    rho_k: dict[int, int]
    lambda_k: dict[int, int]
    elasticity: Fraction
    catenary: int
    sequences_seen: int
    certificate: Certificate

    def to_json(self) -> dict:
        return {
            "ground": self.ground.text(),
            "max_size": self.max_size,
            "max_k": self.max_k,
            "delta": list(self.delta),
            "u_k": {str(k): list(v) for k, v in sorted(self.u_k.items())},
            "rho_k": {str(k): v for k, v in sorted(self.rho_k.items())},
            "lambda_k": {str(k): v for k, v in sorted(self.lambda_k.items())},
            "elasticity": str(self.elasticity),
            "catenary": self.catenary,
            "sequences_seen": self.sequences_seen,
            "certificate": self.certificate.to_json(),
        }


def length_invariants(ground: GroundSet, max_size: int, max_k: int) -> InvariantReport:
    """Scan all product-one sequences of size <= max_size and aggregate their
    sets of lengths into Delta, U_k, rho_k, lambda_k, elasticity, catenary."""
    member = membership_function(ground, max_size)
    inventory = enumerate_atoms(ground, max_len=max_size)
    delta: set[int] = set()
    u_k: dict[int, set[int]] = {k: set() for k in range(1, max_k + 1)}
    elasticity = Fraction(1)
    catenary = 0
    seen = 0
    m = len(ground)
    for vec in _count_vectors(m, max_size):
        if not any(vec) or not member(vec):
            continue
        seen += 1
        s = Sequence(ground, vec)
        facs = factorizations(s, inventory, member)
        lens = facs.lengths()
        if not lens:
            continue
        for a, b in zip(lens, lens[1:]):
            delta.add(b - a)
        for k in range(1, max_k + 1):
            if k in lens:
                u_k[k].update(lens)
        elasticity = max(elasticity, Fraction(lens[-1], lens[0]))
        catenary = max(catenary, catenary_degree(facs))
    return InvariantReport(
        ground=ground,
        max_size=max_size,
        max_k=max_k,
        delta=tuple(sorted(delta)),
        u_k={k: tuple(sorted(v)) for k, v in u_k.items()},
        rho_k={k: (max(v) if v else 0) for k, v in u_k.items()},
        lambda_k={k: (min(v) if v else 0) for k, v in u_k.items()},
        elasticity=elasticity,
        catenary=catenary,
        sequences_seen=seen,
        certificate=ExactWithinBound(max_size),
    )


# -- divisibility and the omega / tame invariants ----------------------------------------


def divides_in_monoid(
    u: Sequence, s: Sequence, member: Callable[[tuple], bool]
) -> bool:
    """u divides S inside the monoid: componentwise, with product-one rest."""
    if not all(a <= b for a, b in zip(u.counts, s.counts)):
        return False
    return member(tuple(a - b for a, b in zip(s.counts, u.counts)))


def _atom_msets(n_atoms: int, size: int):
    return itertools.combinations_with_replacement(range(n_atoms), size)


def _product_vec(atoms: list[tuple], mset: tuple[int, ...], m: int) -> tuple:
    out = [0] * m
    for i in mset:
        for j, c in enumerate(atoms[i]):
            out[j] += c
    return tuple(out)


def omega_witness_value(
    u: Sequence, witness: list[Sequence], member: Callable[[tuple], bool] | None = None
) -> int | None:
    """The smallest number of factors of the witness product that u divides,
    or None if u does not divide the whole product."""
    if member is None:
        total = sum(len(w) for w in witness)
        member = membership_function(u.ground, max(total, len(u)))
    m = len(u.ground)
    atoms = [w.counts for w in witness]
    full = _product_vec(atoms, tuple(range(len(atoms))), m)
    if not divides_in_monoid(u, Sequence(u.ground, full), member):
        return None
    for k in range(1, len(atoms) + 1):
        for sub in set(itertools.combinations(range(len(atoms)), k)):
            vec = _product_vec(atoms, sub, m)
            if divides_in_monoid(u, Sequence(u.ground, vec), member):
                return k
    return len(atoms)


def omega_bound(
    u: Sequence,
    inventory: AtomInventory,
    bound: int,
    member: Callable[[tuple], bool] | None = None,
    product_cap: int | None = None,
) -> TaggedValue:
    """omega(u): over products of at most `bound` atoms (total length at most
    product_cap) divisible by u, the largest minimal subproduct count that u
    still divides."""
    atoms = [a.counts for a in inventory.atoms]
    lens = [sum(a) for a in atoms]
    cap = product_cap if product_cap is not None else bound * max(lens, default=1)
    if member is None:
        member = membership_function(u.ground, max(len(u), cap))
    best, saturated, _ = _omega_scan(u, atoms, lens, bound, cap, member)
    cert = LowerBound(bound) if saturated else ExactWithinBound(bound)
    return TaggedValue(best, cert)


def _omega_scan(u, atoms, lens, bound, cap, member) -> tuple[int, bool, int]:
    """Scan witness multisets; return (best value, saturated flag, length of
    the product realizing the best value)."""
    m = len(u.ground)
    best = 0
    saturated = False
    best_total = 0
    for n in range(1, bound + 1):
        for mset in _atom_msets(len(atoms), n):
            if sum(lens[i] for i in mset) > cap:
                continue
            full = _product_vec(atoms, mset, m)
            if not all(a <= b for a, b in zip(u.counts, full)):
                continue
            if not member(tuple(a - b for a, b in zip(full, u.counts))):
                continue
            need, need_total = _min_divisible_subproduct(u, atoms, mset, m, member)
            if need > best:
                best = need
                saturated = need >= bound
                best_total = need_total
    return best, saturated, best_total


def _min_divisible_subproduct(u, atoms, mset, m, member) -> tuple[int, int]:
    for k in range(1, len(mset) + 1):
        for sub in set(itertools.combinations(mset, k)):
            vec = _product_vec(atoms, sub, m)
            if all(a <= b for a, b in zip(u.counts, vec)) and member(
                tuple(a - b for a, b in zip(vec, u.counts))
            ):
                return k, sum(vec)
    return len(mset), sum(_product_vec(atoms, mset, m))


def tame_bounds(
    u: Sequence,
    inventory: AtomInventory,
    bound: int,
    size_bound: int | None = None,
    product_cap: int | None = None,
) -> dict[str, TaggedValue]:
    """tau(u) and t(u) within bounds, plus omega(u) for the same bound.

    tau scans irredundant atom products (u divides the whole product but no
    leave-one-out subproduct; total length capped by product_cap) and takes
    the largest min-length of the cofactor.  t scans product-one sequences S
    that u divides and measures, for each factorization z of S, the distance
    to the nearest factorization through u."""
    atoms = [a.counts for a in inventory.atoms]
    lens = [sum(a) for a in atoms]
    cap = product_cap if product_cap is not None else bound * max(lens, default=1)
    if isinstance(inventory.certificate, CompleteUpToLength):
        cap = min(cap, inventory.certificate.bound + len(u))
    if not inventory.covers_length(max(len(u), size_bound or 0, cap - len(u))):
        raise ValueError("inventory too small for tame bounds")
    m = len(u.ground)
    max_total = max(len(u), cap, size_bound or 0)
    member = membership_function(u.ground, max_total)
    try:
        u_idx = atoms.index(tuple(u.counts))
    except ValueError:
        raise ValueError("u must be one of the inventory's atoms") from None

    # tau: irredundant witnesses
    tau_best = 0
    tau_saturated = False
    tau_total = 0
    for n in range(1, bound + 1):
        for mset in _atom_msets(len(atoms), n):
            total = sum(lens[i] for i in mset)
            if total > cap:
                continue
            full = _product_vec(atoms, mset, m)
            if not divides_in_monoid(u, Sequence(u.ground, full), member):
                continue
            irredundant = True
            for drop in range(n):
                if drop and mset[drop] == mset[drop - 1]:
                    continue
                sub = mset[:drop] + mset[drop + 1 :]
                vec = _product_vec(atoms, sub, m)
                if divides_in_monoid(u, Sequence(u.ground, vec), member):
                    irredundant = False
                    break
            if not irredundant:
                continue
            rest = tuple(a - b for a, b in zip(full, u.counts))
            cof = factorizations(Sequence(u.ground, rest), inventory, member).lengths()
            val = cof[0] if cof else 0
            if val > tau_best:
                tau_best = val
                tau_saturated = n >= bound
                tau_total = total
    # t: distance from any factorization to one through u
    sb = size_bound if size_bound is not None else min(
        bound * inventory.max_length(), ATOM_SCAN_DEFAULT + len(u)
    )
    if isinstance(inventory.certificate, CompleteUpToLength):
        sb = min(sb, inventory.certificate.bound)
    t_best = 0
    t_saturated = False
    for vec in _count_vectors(m, sb):
        if not any(vec) or not member(vec):
            continue
        s = Sequence(u.ground, vec)
        if not divides_in_monoid(u, s, member):
            continue
        facs = factorizations(s, inventory, member).factorizations
        through_u = [z for z in facs if u_idx in z]
        if not through_u:
            continue
        for z in facs:
            d = min(distance(z, z2) for z2 in through_u)
            if d > t_best:
                t_best = d
                t_saturated = sum(vec) >= sb
    om_best, om_saturated, om_total = _omega_scan(u, atoms, lens, bound, cap, member)
    # the omega/tau maximizers live on products of these lengths; a t scan
    # whose window is smaller cannot certify more than a lower bound
    if sb < max(om_total, tau_total):
        t_saturated = True
    return {
        "omega": TaggedValue(
            om_best, LowerBound(bound) if om_saturated else ExactWithinBound(bound)
        ),
        "tau": TaggedValue(
            tau_best, LowerBound(bound) if tau_saturated else ExactWithinBound(bound)
        ),
        "t": TaggedValue(
            t_best, LowerBound(sb) if t_saturated else ExactWithinBound(sb)
        ),
    }


# -- structural probes ---------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of a bounded search for a structural counterexample."""

    found: bool
    witness: Sequence | None
    inside: Sequence | None
    container: Sequence | None
    powers: tuple[int, ...]
    bound: int
    checked: int

    def to_json(self) -> dict:
        out = {
            "found": self.found,
            "bound": self.bound,
            "checked": self.checked,
            "powers": list(self.powers),
        }
        if self.found:
            out["witness"] = self.witness.to_json()
            out["container"] = self.container.to_json()
            out["removed"] = self.inside.to_json()
        return out


def _quotient_candidates(ground: GroundSet, bound: int, member):
    """Yield (T, S1, S2) with S1, S2 product-one, S2 < S1, T = S1 - S2 nonempty
    and not product-one, deduplicating T, in (size, lex) scan order."""
    m = len(ground)
    seen: set[tuple] = set()
    for vec in _count_vectors(m, bound):
        if not any(vec) or not member(vec):
            continue
        s1 = Sequence(ground, vec)
        for sub in itertools.product(*[range(c + 1) for c in vec]):
            if sub == vec:
                continue
            if not member(sub):
                continue
            t = tuple(a - b for a, b in zip(vec, sub))
            if t in seen:
                continue
            seen.add(t)
            if member(t):
                continue
            yield Sequence(ground, t), s1, Sequence(ground, sub)


def seminormality_probe(ground: GroundSet, bound: int) -> ProbeResult:
    """Search for T in the quotient of the monoid with T^2 and T^3 product-one
    but T not: the first such T refutes seminormality."""
    member = membership_function(ground, 3 * bound)
    checked = 0
    for t, s1, s2 in _quotient_candidates(ground, bound, member):
        checked += 1
        if member(t.power(2).counts) and member(t.power(3).counts):
            return ProbeResult(True, t, s2, s1, (2, 3), bound, checked)
    return ProbeResult(False, None, None, None, (2, 3), bound, checked)


def root_closure_probe(ground: GroundSet, bound: int, max_power: int = 6) -> ProbeResult:
    """Search for T in the quotient with T^n product-one for some n <= max_power
    but T not: the first such T refutes root closedness."""
    member = membership_function(ground, max_power * bound)
    checked = 0
    for t, s1, s2 in _quotient_candidates(ground, bound, member):
        checked += 1
        for n in range(2, max_power + 1):
            if member(t.power(n).counts):
                return ProbeResult(True, t, s2, s1, (n,), bound, checked)
    return ProbeResult(False, None, None, None, tuple(range(2, max_power + 1)), bound, checked)


def in_localization(
    s: Sequence, g: Element, bound: int
) -> tuple[bool, Sequence | None]:
    """Does S lie in the localization at the prime of sequences through g?
    True iff some product-one T avoiding g has S*T product-one (T of size <=
    bound; T empty means S itself is product-one)."""
    ground = s.ground
    m = len(ground)
    gi = ground.index(g)
    member = membership_function(ground, bound + len(s))
    for vec in _count_vectors(m, bound):
        if vec[gi]:
            continue
        if not member(vec):
            continue
        joint = tuple(a + b for a, b in zip(s.counts, vec))
        if member(joint):
            return True, Sequence(ground, vec)
    return False, None


def localization_gap_search(
    ground: GroundSet, size_bound: int, witness_bound: int
) -> dict | None:
    """Search for a non-product-one S lying in the localization at every
    support prime: such an S separates the monoid from the intersection of
    its localizations."""
    m = len(ground)
    member = membership_function(ground, size_bound + witness_bound)
    for vec in _count_vectors(m, size_bound):
        if not any(vec) or member(vec):
            continue
        s = Sequence(ground, vec)
        witnesses = {}
        for g in ground.elements:
            ok, t = in_localization(s, g, witness_bound)
            if not ok:
                break
            witnesses[g] = t
        else:
            return {"sequence": s, "witnesses": witnesses}
    return None


def condensed_subset(ground: GroundSet, bound: int = 8) -> dict:
    """The elements that appear in at least one product-one sequence over the
    ground set, each with a witness (bounded search for aperiodic elements)."""
    member = membership_function(ground, bound)
    m = len(ground)
    inside: dict[Element, Sequence | None] = {}
    for i, g in enumerate(ground.elements):
        witness = None
        for vec in _count_vectors(m, bound):
            if vec[i] and member(vec):
                witness = Sequence(ground, vec)
                break
        if witness is not None:
            inside[g] = witness
    return {
        "elements": tuple(inside),
        "witnesses": inside,
        "bound": bound,
    }


def finitary_witness(ground: GroundSet, n_min: int, bound: int) -> dict:
    """Evidence that finitely many atoms left-divide every product-one sequence
    of size in [n_min, bound]: greedily cover the scanned range by atoms."""
    member = membership_function(ground, bound)
    inventory = enumerate_atoms(ground, max_len=bound)
    atoms = [a.counts for a in inventory.atoms]
    m = len(ground)
    used: set[int] = set()
    uncovered = []
    total = 0
    for vec in _count_vectors(m, bound):
        if sum(vec) < n_min or not any(vec) or not member(vec):
            continue
        total += 1
        hit = None
        for idx in sorted(used):  # prefer atoms already in the cover
            a = atoms[idx]
            if all(x <= y for x, y in zip(a, vec)) and member(
                tuple(y - x for y, x in zip(vec, a))
            ):
                hit = idx
                break
        if hit is None:
            for idx, a in enumerate(atoms):
                if all(x <= y for x, y in zip(a, vec)) and member(
                    tuple(y - x for y, x in zip(vec, a))
                ):
                    hit = idx
                    used.add(idx)
                    break
        if hit is None:
            uncovered.append(Sequence(ground, vec))
    return {
        "covering_atoms": tuple(inventory.atoms[i] for i in sorted(used)),
        "uncovered": tuple(uncovered),
        "sequences_checked": total,
        "n_min": n_min,
        "bound": bound,
        "complete_cover": not uncovered,
    }


def products_in_derived_subgroup(s: Sequence) -> bool:
    """Do all ordered products of S land in the derived subgroup?"""
    group = s.ground.group
    if group.kind == "integers":
        return sum(e.k * c for e, c in zip(s.ground.elements, s.counts)) == 0
    if group.kind == "infinite-dihedral":
        q = sum(c for e, c in zip(s.ground.elements, s.counts) if e.tag == "refl")
        total = sum(e.k * c for e, c in zip(s.ground.elements, s.counts))
        return q % 2 == 0 and total % 2 == 0
    derived = group.commutator_subgroup()
    return product_set(s).issubset(derived)
