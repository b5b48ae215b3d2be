"""Product sets of unordered sequences, and product-one membership.

Two independent routes compute the set pi(S) of all ordered products of a
sequence S:

* a permutation walk that multiplies out every distinct ordering left to
  right (exponential; the ground truth for small instances), and
* a dynamic program over the lattice of sub-multisets, where the reachable
  products of T are built from the reachable products of T minus one element
  (polynomial in the number of sub-multisets).

They must agree everywhere; the verification suite pins that equivalence
exhaustively on bounded boxes.
"""

from __future__ import annotations

import itertools

from .groups import Element, Group, _check64
from .sequences import Sequence

PERM_BUDGET = 8
DP_PAIR_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """Raised when an exact computation would exceed its stated budget."""


# -- permutation walk ----------------------------------------------------------


def product_set_perm(s: Sequence) -> set[Element]:
    """pi(S) by walking every distinct ordering (budget: len(S) <= 8)."""
    n = len(s)
    if n > PERM_BUDGET:
        raise BudgetExceeded(f"permutation walk limited to length {PERM_BUDGET}, got {n}")
    group = s.ground.group
    if n == 0:
        return {group.identity()}
    elems = list(s.ground.elements)
    counts = list(s.counts)
    out: set[Element] = set()
    mul = group.mul

    def walk(prefix: Element, remaining: int) -> None:
        if remaining == 0:
            out.add(prefix)
            return
        for i, e in enumerate(elems):
            if counts[i]:
                counts[i] -= 1
                walk(mul(prefix, e), remaining - 1)
                counts[i] += 1

    walk(group.identity(), n)
    return out


def is_product_one_perm(s: Sequence) -> bool:
    """Identity membership by permutation walk, stopping at the first hit."""
    n = len(s)
    if n > PERM_BUDGET:
        raise BudgetExceeded(f"permutation walk limited to length {PERM_BUDGET}, got {n}")
    group = s.ground.group
    ident = group.identity()
    if n == 0:
        return True
    elems = list(s.ground.elements)
    counts = list(s.counts)
    mul = group.mul

    def walk(prefix: Element, remaining: int) -> bool:
        if remaining == 0:
            return prefix == ident
        for i, e in enumerate(elems):
            if counts[i]:
                counts[i] -= 1
                hit = walk(mul(prefix, e), remaining - 1)
                counts[i] += 1
                if hit:
                    return True
        return False

    return walk(ident, n)


# -- sub-multiset dynamic program ----------------------------------------------


def product_set_dp(s: Sequence, pair_budget: int = DP_PAIR_BUDGET) -> set[Element]:
    """pi(S) by the sub-multiset lattice dynamic program."""
    group = s.ground.group
    if len(s) == 0:
        return {group.identity()}
    reach = _dp_layers(group, s.ground.elements, s.counts, pair_budget)
    return set(reach)


def _dp_layers(
    group: Group,
    elems: tuple[Element, ...],
    counts: tuple[int, ...],
    pair_budget: int,
    *,
    watch_identity: bool = False,
):
    """Run the lattice DP; return the top reach set, or True/False early if
    watch_identity is set (True as soon as any nonempty layer reaches 1)."""
    mul = group.mul
    ident = group.identity()
    total = sum(counts)
    m = len(elems)
    zero = (0,) * m
    layer: dict[tuple[int, ...], frozenset[Element]] = {zero: frozenset((ident,))}
    pairs = 0
    for _ in range(total):
        nxt: dict[tuple[int, ...], set[Element]] = {}
        for vec, reach in layer.items():
            for i in range(m):
                if vec[i] < counts[i]:
                    pairs += 1
                    if pairs > pair_budget:
                        raise BudgetExceeded(
                            f"product DP exceeded {pair_budget} (sub-multiset, element) pairs"
                        )
                    child = vec[:i] + (vec[i] + 1,) + vec[i + 1 :]
                    e = elems[i]
                    acc = nxt.get(child)
                    if acc is None:
                        acc = set()
                        nxt[child] = acc
                    for x in reach:
                        acc.add(mul(x, e))
        layer = {v: frozenset(r) for v, r in nxt.items()}
        if watch_identity and any(ident in r for r in layer.values()):
            return True
    if watch_identity:
        return False
    (top_reach,) = layer.values()
    return top_reach


def product_set(s: Sequence, method: str = "auto") -> set[Element]:
    """pi(S).  method: "auto" (DP, dihedral-aware), "dp", or "perm"."""
    if method == "perm":
        return product_set_perm(s)
    if method in ("auto", "dp"):
        if method == "auto" and s.ground.group.kind == "integers":
            return {Element("int", _check64(_int_sum(s)))}
        return product_set_dp(s)
    raise ValueError(f"unknown method {method!r}")


# -- membership ------------------------------------------------------------------


def _int_sum(s: Sequence) -> int:
    return sum(e.k * c for e, c in zip(s.ground.elements, s.counts))


def is_product_one(s: Sequence) -> bool:
    """Is 1 an ordered product of S?  (True for the empty sequence.)"""
    group = s.ground.group
    if len(s) == 0:
        return True
    if group.kind == "integers":
        return _int_sum(s) == 0
    if group.kind == "infinite-dihedral":
        from . import dihedral

        return dihedral.is_product_one(s)
    reach = _dp_layers(group, s.ground.elements, s.counts, DP_PAIR_BUDGET)
    return group.identity() in reach


def is_product_one_free(s: Sequence, pair_budget: int = DP_PAIR_BUDGET) -> bool:
    """Does no nonempty subsequence of S have product one?"""
    group = s.ground.group
    if len(s) == 0:
        return True
    if group.kind == "integers":
        return _int_free(s)
    if group.kind == "infinite-dihedral":
        from . import dihedral

        oracle = dihedral.membership_oracle(s.ground)
        budget = pair_budget
        for combo in itertools.product(*[range(c + 1) for c in s.counts]):
            if not any(combo):
                continue
            budget -= 1
            if budget < 0:
                raise BudgetExceeded("product-one-free scan exceeded its budget")
            if oracle(combo):
                return False
        return True
    hit = _dp_layers(
        group, s.ground.elements, s.counts, pair_budget, watch_identity=True
    )
    return not hit


def _int_free(s: Sequence) -> bool:
    """Zero-sum-free test over the integers via reachable-sum bitmasks."""
    neg = sum(-e.k * c for e, c in zip(s.ground.elements, s.counts) if e.k < 0)
    reach = 0  # bit (v + neg) set  <=>  some nonempty subsequence sums to v
    off = neg
    for e, c in zip(s.ground.elements, s.counts):
        if e.k == 0:
            return False
        for _ in range(c):
            shifted = (reach << e.k) if e.k > 0 else (reach >> -e.k)
            reach |= shifted | (1 << (off + e.k))
            if reach >> off & 1:
                return False
    return not (reach >> off & 1)


# -- bulk membership over a ground set -------------------------------------------


def finite_membership_table(
    ground, max_len: int, pair_budget: int = DP_PAIR_BUDGET
) -> dict[tuple[int, ...], bool]:
    """Product-one membership for every multiset of size <= max_len over a
    finite group's ground set, keyed by count vector."""
    group = ground.group
    if group.kind != "finite-cayley":
        raise ValueError("membership table needs a finite group")
    mul = group.mul
    ident = group.identity()
    elems = ground.elements
    m = len(elems)
    zero = (0,) * m
    out: dict[tuple[int, ...], bool] = {zero: True}
    layer: dict[tuple[int, ...], frozenset[Element]] = {zero: frozenset((ident,))}
    pairs = 0
    for _ in range(max_len):
        nxt: dict[tuple[int, ...], set[Element]] = {}
        for vec, reach in layer.items():
            for i in range(m):
                pairs += 1
                if pairs > pair_budget:
                    raise BudgetExceeded("membership table exceeded its pair budget")
                child = vec[:i] + (vec[i] + 1,) + vec[i + 1 :]
                e = elems[i]
                acc = nxt.get(child)
                if acc is None:
                    acc = set()
                    nxt[child] = acc
                for x in reach:
                    acc.add(mul(x, e))
        layer = {v: frozenset(r) for v, r in nxt.items()}
        for vec, reach in layer.items():
            out[vec] = ident in reach
    return out
