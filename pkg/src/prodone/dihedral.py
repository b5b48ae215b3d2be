"""Exact decision procedures over the infinite dihedral group.

Write rotations as a^r and reflections as a^w t, where t a^r = a^-r t.
Multiplying out a word and pushing every t to the right flips the sign of an
exponent once for each t that passes over it, so a word with q reflections
collapses to a^(signed exponent sum) t^q, where a rotation's sign is
(-1)^(number of reflections to its left) and the j-th reflection from the
left contributes its own exponent with sign (-1)^(j-1).

Consequently a sequence S containing q reflections has product one for some
ordering iff q is even and zero is a realizable signed exponent sum, where

* the reflection signs alternate +,-,+,- in word order, so exactly q/2
  reflections are positive and q/2 negative, the split otherwise free;
* each rotation picks its sign freely when q >= 1 (place it before or after
  the first reflection), and is forced positive when q = 0.

The decider below runs a dynamic program over pairs (reflection sign
imbalance, signed exponent sum), one item at a time, with the reachable sums
for each imbalance packed into a single integer bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .groups import Element
from .products import BudgetExceeded
from .sequences import GroundSet, Sequence, empty, from_pairs

CELL_BUDGET = 200_000_000


class DihedralError(ValueError):
    """Raised when a dihedral routine is fed a non-dihedral ground set."""


def _shape(ground: GroundSet):
    """Split a ground set into (rotation exps, reflection exps, has_identity)."""
    if ground.group.kind != "infinite-dihedral":
        raise DihedralError("ground set is not over the infinite dihedral group")
    rots, refls, has_id = [], [], False
    for e in ground.elements:
        if e.tag == "refl":
            refls.append(e.k)
        elif e.k == 0:
            has_id = True
        else:
            rots.append(e.k)
    return rots, refls, has_id


def _items(s: Sequence):
    """(is_reflection, exponent, multiplicity) triples, reflections first."""
    out = []
    for e, c in zip(s.ground.elements, s.counts):
        if c:
            out.append((e.tag == "refl", e.k, c))
    out.sort(key=lambda it: (not it[0], it[1]))
    return out


def _sh(mask: int, k: int) -> int:
    return mask << k if k >= 0 else mask >> -k


def _feasible(items) -> bool:
    """Zero realizable as a signed exponent sum with balanced reflection signs."""
    q = sum(m for isr, _, m in items if isr)
    if q % 2:
        return False
    if q == 0:
        return sum(e * m for _, e, m in items) == 0
    off = sum(abs(e) * m for _, e, m in items)
    n = sum(m for *_, m in items)
    if n * (q + 1) * (2 * off + 1) > CELL_BUDGET:
        raise BudgetExceeded(
            f"balance DP needs ~{n * (q + 1) * (2 * off + 1)} cells; exponent sums too large"
        )
    state = {0: 1 << off}  # imbalance -> bitmask of sums (bit index = sum + off)
    refl_left = q
    for isr, e, m in items:
        for _ in range(m):
            if isr:
                refl_left -= 1
                nxt: dict[int, int] = {}
                for c, mask in state.items():
                    for nc, nm in ((c + 1, _sh(mask, e)), (c - 1, _sh(mask, -e))):
                        if abs(nc) <= refl_left and nm:
                            nxt[nc] = nxt.get(nc, 0) | nm
                state = nxt
            elif e:
                state = {c: _sh(mask, e) | _sh(mask, -e) for c, mask in state.items()}
    return bool(state.get(0, 0) >> off & 1)


def is_product_one(s: Sequence) -> bool:
    """Is 1 an ordered product of the dihedral sequence S?"""
    if s.ground.group.kind != "infinite-dihedral":
        raise DihedralError("sequence is not over the infinite dihedral group")
    return _feasible(_items(s))


def membership_oracle(ground: GroundSet):
    """A memoized count-vector membership test for scans over one ground set."""
    if ground.group.kind != "infinite-dihedral":
        raise DihedralError("ground set is not over the infinite dihedral group")
    info = [(e.tag == "refl", e.k) for e in ground.elements]
    order = sorted(range(len(info)), key=lambda i: (not info[i][0], info[i][1]))
    memo: dict[tuple[int, ...], bool] = {}

    def member(counts: tuple[int, ...]) -> bool:
        got = memo.get(counts)
        if got is None:
            items = [(info[i][0], info[i][1], counts[i]) for i in order if counts[i]]
            got = memo[counts] = _feasible(items)
        return got

    return member


# -- canonical witness splits ---------------------------------------------------


@dataclass(frozen=True)
class ProductOneSplit:
    """A witness that S multiplies to one: S = t1 t2 w1 w2 with |w1| = |w2|
    and sum(t1) + sum(w1) = sum(t2) + sum(w2) over the exponents.

    Order the word as: t1's rotations, then w1[0], then t2's rotations, then
    w2[0], then the remaining reflections alternating w1[1], w2[1], ...; the
    first reflection conjugates everything after it, so the exponent balance
    makes the product collapse to the identity.  With no reflections at all
    there is no conjugation and the plain exponent sum must vanish instead.
    """

    t1: Sequence
    t2: Sequence
    w1: Sequence
    w2: Sequence

    def validate(self) -> bool:
        whole = self.t1 + self.t2 + self.w1 + self.w2
        left = _expsum(self.t1) + _expsum(self.w1)
        right = _expsum(self.t2) + _expsum(self.w2)
        balanced = left == right if len(self.w1) else left + right == 0
        return (
            len(self.w1) == len(self.w2)
            and balanced
            and all(e.tag != "refl" for e in self.t1.support() + self.t2.support())
            and all(e.tag == "refl" for e in self.w1.support() + self.w2.support())
            and whole.counts == self.whole().counts
        )

    def whole(self) -> Sequence:
        return self.t1 + self.t2 + self.w1 + self.w2

    def to_json(self) -> dict:
        return {
            "t1": self.t1.to_json()["terms"],
            "t2": self.t2.to_json()["terms"],
            "w1": self.w1.to_json()["terms"],
            "w2": self.w2.to_json()["terms"],
        }


def _expsum(s: Sequence) -> int:
    return sum(e.k * c for e, c in zip(s.ground.elements, s.counts))


def decompose(s: Sequence) -> ProductOneSplit | None:
    """A canonical witness split for a product-one dihedral sequence, else None.

    Deterministic: scanning reflections in ascending exponent order and then
    rotations in ascending exponent order, each item goes to the first part
    (w1 resp. t1) whenever some completion of the remaining items still
    balances, else to the second part.
    """
    if s.ground.group.kind != "infinite-dihedral":
        raise DihedralError("sequence is not over the infinite dihedral group")
    units: list[tuple[bool, int]] = []
    for isr, e, m in _items(s):
        units.extend([(isr, e)] * m)
    q = sum(1 for isr, _ in units if isr)
    if q % 2:
        return None
    if q == 0:
        # no reflection conjugates anything: the exponents just add
        if sum(e for _, e in units):
            return None
        split = ProductOneSplit(
            t1=Sequence(s.ground, s.counts),
            t2=empty(s.ground),
            w1=empty(s.ground),
            w2=empty(s.ground),
        )
        assert split.validate()
        return split
    off = sum(abs(e) for _, e in units)
    n = len(units)
    if n * (q + 1) * (2 * off + 1) > CELL_BUDGET:
        raise BudgetExceeded("witness split would exceed the balance DP budget")

    # feas[i]: imbalance -> bitmask of signed sums realizable by units[i:]
    feas: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    feas[n] = {0: 1 << off}
    for i in range(n - 1, -1, -1):
        isr, e = units[i]
        cur: dict[int, int] = {}
        for c, mask in feas[i + 1].items():
            if isr:
                for nc, nm in ((c + 1, _sh(mask, e)), (c - 1, _sh(mask, -e))):
                    if nm:
                        cur[nc] = cur.get(nc, 0) | nm
            else:
                cur[c] = cur.get(c, 0) | _sh(mask, e) | _sh(mask, -e)
        feas[i] = cur
    if not (feas[0].get(0, 0) >> off & 1):
        return None

    c_cur = v_cur = 0
    first: list[bool] = []
    for i, (isr, e) in enumerate(units):
        for sign in (1, -1):
            c_new = c_cur + (sign if isr else 0)
            v_new = v_cur + sign * e
            mask = feas[i + 1].get(-c_new, 0)
            pos = -v_new + off
            if 0 <= pos and mask >> pos & 1:
                first.append(sign == 1)
                c_cur, v_cur = c_new, v_new
                break
        else:
            raise AssertionError("feasibility tables are inconsistent")

    def collect(want_refl: bool, want_first: bool) -> Sequence:
        pairs = [
            (Element("refl" if isr else "rot", e), 1)
            for (isr, e), f in zip(units, first)
            if isr == want_refl and f == want_first
        ]
        return from_pairs(s.ground, pairs)

    split = ProductOneSplit(
        t1=collect(False, True),
        t2=collect(False, False),
        w1=collect(True, True),
        w2=collect(True, False),
    )
    assert split.validate()
    return split


# -- closed-form atom inventories ------------------------------------------------


def _refl_seq(ground: GroundSet, pairs) -> Sequence:
    return from_pairs(ground, [(Element("refl", w), m) for w, m in pairs])


def two_reflection_atoms(ground: GroundSet) -> list[Sequence]:
    """Atoms over a ground set of exactly one or two distinct reflections:
    just the squares (the monoid is factorial on them)."""
    rots, refls, _ = _shape(ground)
    if rots or not refls or len(refls) > 2:
        raise DihedralError("ground set must hold one or two reflections and no rotations")
    return [_refl_seq(ground, [(w, 2)]) for w in refls]


def three_reflection_atoms(ground: GroundSet) -> list[Sequence]:
    """Atoms over three distinct reflections a^i t, a^j t, a^k t: the three
    squares plus one balanced atom whose multiplicities are the pairwise
    exponent gaps of the *other* two reflections, divided by their gcd."""
    rots, refls, _ = _shape(ground)
    if rots or len(refls) != 3:
        raise DihedralError("ground set must hold exactly three reflections and no rotations")
    i, j, k = refls
    d = gcd(k - j, gcd(k - i, j - i))
    squares = [_refl_seq(ground, [(w, 2)]) for w in refls]
    balanced = _refl_seq(
        ground,
        [(i, abs(k - j) // d), (j, abs(k - i) // d), (k, abs(j - i) // d)],
    )
    return squares + [balanced]


def rotation_reflection_atoms(ground: GroundSet, max_len: int) -> list[Sequence]:
    """Atoms of length <= max_len over one nonzero rotation a^r and one
    reflection a^w t: the family (a^r)^[2n] (a^w t)^[2], n >= 0."""
    rots, refls, _ = _shape(ground)
    if len(rots) != 1 or len(refls) != 1:
        raise DihedralError("ground set must hold exactly one rotation and one reflection")
    r, w = rots[0], refls[0]
    out = []
    n = 0
    while 2 * n + 2 <= max_len:
        out.append(
            from_pairs(ground, [(Element("rot", r), 2 * n), (Element("refl", w), 2)])
        )
        n += 1
    return out


def infinite_atom_family(ground: GroundSet) -> "tuple | None":
    """For a ground set holding a nonzero rotation a^r and a reflection a^w t,
    the unbounded atom family (a^r)^[2n] (a^w t)^[2]; None otherwise.

    Each member is an atom over any ambient ground set: a proper product-one
    divisor could only use these two supports, needs an even reflection count
    (0 or 2), and with 0 reflections a nonempty rotation power never balances,
    while with both reflections the complement is a pure rotation power."""
    rots, refls, _ = _shape(ground)
    if not rots or not refls:
        return None
    r, w = rots[0], refls[0]

    def make(n: int) -> Sequence:
        return from_pairs(ground, [(Element("rot", r), 2 * n), (Element("refl", w), 2)])

    return (f"(a^{r})^[2n] (a^{w} t)^[2]", make)


# -- classifiers -----------------------------------------------------------------


def is_finitely_generated(ground: GroundSet) -> bool:
    """Finitely many atoms iff no reflections or no nonidentity rotations."""
    rots, refls, _ = _shape(ground)
    return not rots or not refls


def is_tame(ground: GroundSet) -> bool:
    """Bounded tame degree; coincides with finite generation here."""
    return is_finitely_generated(ground)


def is_locally_tame(ground: GroundSet) -> bool:
    """Every single atom has finite tame degree: fails exactly when a
    reflection coexists with rotation exponents of both signs."""
    rots, refls, _ = _shape(ground)
    if not refls:
        return True
    return all(r > 0 for r in rots) or all(r < 0 for r in rots)


def coprime_cofactors(values) -> tuple[bool, dict[int, int], dict]:
    """For distinct positive values (gcd-normalized internally), the unique
    candidate cofactors b_k = gcd of the other values; succeeds iff they are
    pairwise coprime and k*b_k equals their product for every k."""
    vals = sorted(set(values))
    if not vals or any(v <= 0 for v in vals):
        raise ValueError("values must be positive")
    d = 0
    for v in vals:
        d = gcd(d, v)
    norm = [v // d for v in vals]
    if len(norm) == 1:
        detail = {"gcd": d, "normalized": norm, "product": norm[0]}
        return True, {vals[0]: 1}, detail
    b: dict[int, int] = {}
    for k in norm:
        g = 0
        for l in norm:
            if l != k:
                g = gcd(g, l)
        b[k] = g
    prod = 1
    for k in norm:
        prod *= b[k]
    ok = all(k * b[k] == prod for k in norm)
    if ok:
        for x in norm:
            for y in norm:
                if x < y and gcd(b[x], b[y]) != 1:
                    ok = False
    detail = {
        "gcd": d,
        "normalized": norm,
        "cofactors": {v: b[v // d] for v in vals},
        "product": prod,
        "failing": next((k * d for k in norm if k * b[k] != prod), None),
    }
    return ok, {v: b[v // d] for v in vals}, detail


def weakly_krull(ground: GroundSet) -> tuple[bool, dict]:
    """Decide weak Krullness of the product-one monoid over the ground set.

    Cases (identity stripped first): pure rotations are Krull; reflections
    alone are weakly Krull up to three of them; a reflection together with
    rotations needs exactly one reflection, rotation exponents of both signs,
    and the coprime-cofactor identity on the exponent magnitudes."""
    rots, refls, has_id = _shape(ground)
    cert: dict = {
        "identity_stripped": has_id,
        "rotation_exponents": rots,
        "reflection_exponents": refls,
    }
    if not refls:
        cert["case"] = "pure-rotations"
        return True, cert
    if not rots:
        cert["case"] = "reflections-only"
        cert["reflection_count"] = len(refls)
        return len(refls) <= 3, cert
    if len(refls) >= 2:
        cert["case"] = "rotations-with-several-reflections"
        return False, cert
    cert["reflection_exponent"] = refls[0]
    pos = [r for r in rots if r > 0]
    neg = [-r for r in rots if r < 0]
    if not pos or not neg:
        cert["case"] = "one-reflection-single-sign"
        return False, cert
    cert["case"] = "one-reflection-mixed-signs"
    ok, b, detail = coprime_cofactors(pos + neg)
    cert["cofactors"] = detail
    return ok, cert


def classify(ground: GroundSet) -> dict:
    """All structural classifications of one dihedral ground set, as JSON."""
    wk, cert = weakly_krull(ground)
    return {
        "ground": ground.text(),
        "finitely_generated": is_finitely_generated(ground),
        "tame": is_tame(ground),
        "locally_tame": is_locally_tame(ground),
        "weakly_krull": wk,
        "weakly_krull_certificate": cert,
    }


# -- arithmetic relation witnesses -------------------------------------------------


def relation_witness(i: int, j: int, k: int) -> tuple[bool, tuple[int, int, int] | None]:
    """For distinct positive i, j, k with gcd 1: coprime positive x, y, z with
    i*x + j*y = k*z and i*x not divisible by k.  Such a witness exists iff
    k != gcd(i,k) * gcd(j,k); the construction writes gcd(j,k) = k*z' - j*y'
    and scales by i."""
    if len({i, j, k}) != 3 or min(i, j, k) <= 0:
        raise ValueError("need three distinct positive values")
    if gcd(i, gcd(j, k)) != 1:
        raise ValueError("values must have gcd 1")
    if k == gcd(i, k) * gcd(j, k):
        return False, None
    g = gcd(j, k)
    # extended Euclid: g = k*z0 - j*y0
    z0, y0 = _euclid_pair(k, j, g)
    for m in range(0, 64):
        zp, yp = z0 + (j // g) * m, y0 + (k // g) * m
        if zp <= 0 or yp <= 0:
            continue
        x, y, z = g, yp * i, zp * i
        s = gcd(x, gcd(y, z))
        x, y, z = x // s, y // s, z // s
        if i * x + j * y == k * z and (i * x) % k != 0:
            return True, (x, y, z)
    for z in range(1, 201):  # fallback: small search, same guarantee
        for x in range(1, 201):
            rem = k * z - i * x
            if rem <= 0 or rem % j:
                continue
            y = rem // j
            if gcd(x, gcd(y, z)) == 1 and (i * x) % k != 0:
                return True, (x, y, z)
    raise AssertionError(f"no witness found for {(i, j, k)} though one must exist")


def _euclid_pair(k: int, j: int, g: int) -> tuple[int, int]:
    """(z0, y0) with k*z0 - j*y0 = g."""
    old_r, r = k, j
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    # old_r = gcd = k*old_s + j*old_t
    assert old_r == g
    return old_s, -old_t
