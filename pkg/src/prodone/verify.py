"""End-to-end verification suites.

Each criterion checks engine output against an independent oracle or against
frozen known values, under a wall-clock limit.  A criterion that raises is
reported as failed, never skipped.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import analysis, products
from . import dihedral as dih
from .certificates import ExactWithinBound
from .groups import (
    Element,
    cyclic,
    elementary_two,
    finite_dihedral,
    infinite_dihedral,
    integers,
)
from .sequences import GroundSet, Sequence, ground, parse_subset


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one acceptance criterion."""

    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"criterion {self.number:02d} [{status}] {self.name}: {self.detail}"
            f" ({self.elapsed:.2f}s, limit {self.limit:.0f}s)"
        )

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "limit": self.limit,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def thread_cap() -> int:
    """The parallelism cap from PRODONE_THREADS (default: all cores)."""
    raw = os.environ.get("PRODONE_THREADS", "").strip()
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def _whole(group) -> GroundSet:
    return ground(group, group.elements())


# -- criterion 1: Davenport constants of elementary 2-groups ------------------------------


def _c01() -> tuple[bool, str]:
    """The largest atom over the full rank-r elementary 2-group has length r+1."""
    got = {}
    for r in (1, 2, 3, 4):
        res = analysis.davenport(_whole(elementary_two(r)))
        got[r] = (res.status, None if res.value is None else res.value.value)
    ok = all(got[r] == ("exact", r + 1) for r in (1, 2, 3, 4))
    return ok, "; ".join(f"rank {r}: D={got[r][1]}" for r in (1, 2, 3, 4))


# -- criterion 2: cyclic Davenport constants, two independent ways ------------------------


def _free_multiset_davenport(group) -> int:
    """Davenport constant as 1 + the largest product-one-free multiset size.

    Freeness is decided by the ordered-product walk alone: a multiset is free
    when all its maximal sub-multisets are free and it is not product-one
    itself, so this shares no code with the atom enumerator."""
    gnd = _whole(group)
    m = len(gnd)
    zero = (0,) * m
    free: dict[tuple[int, ...], bool] = {zero: True}
    frontier = [zero]
    best = 0
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(m):
                w = v[:i] + (v[i] + 1,) + v[i + 1 :]
                if w in free:
                    continue
                parents_free = all(
                    free.get(w[:j] + (w[j] - 1,) + w[j + 1 :], False)
                    for j in range(m)
                    if w[j]
                )
                if parents_free and not products.is_product_one_perm(Sequence(gnd, w)):
                    free[w] = True
                    nxt.append(w)
                    best = max(best, sum(w))
                else:
                    free[w] = False
        frontier = nxt
    return best + 1


def _c02() -> tuple[bool, str]:
    """D(C_n) = n from the free-multiset enumerator and the atom inventory."""
    ok = True
    vals = []
    for n in range(2, 9):
        grp = cyclic(n)
        by_free = _free_multiset_davenport(grp)
        by_atoms = analysis.davenport(_whole(grp))
        ok &= by_free == n and by_atoms.status == "exact" and by_atoms.value.value == n
        vals.append(f"D(C{n})={by_free}")
    return ok, "; ".join(vals)


# -- criterion 3: atoms over one rotation with one reflection -----------------------------


def _c03() -> tuple[bool, str]:
    """Atoms over {a, t} up to length 12 and the singleton sets of lengths."""
    gnd = parse_subset(infinite_dihedral(), "{a, t}")
    inv = analysis.enumerate_atoms(gnd, max_len=12)
    want = [(0, 2)] + [(2 * n, 2) for n in range(1, 6)]
    ok = [a.counts for a in inv.atoms] == want
    inv16 = analysis.enumerate_atoms(gnd, max_len=16)
    member = analysis.membership_function(gnd, 16)
    singletons = True
    for n in range(0, 5):
        for m in range(1, 5):
            s = Sequence(gnd, (2 * n, 2 * m))
            singletons &= analysis.set_of_lengths(s, inv16, member) == (m,)
    ok &= singletons
    return ok, (
        f"{len(inv.atoms)} atoms as expected; "
        f"L(a^[2n], t^[2m]) == {{m}} for n<=4, m<=4: {singletons}"
    )


# -- criterion 4: seminormality and root-closure probes -----------------------------------


def _c04() -> tuple[bool, str]:
    """One ground yields a seminormality counterexample; another stays root closed."""
    dinf = infinite_dihedral()
    semi = analysis.seminormality_probe(parse_subset(dinf, "{a^2, a^6, t}"), 10)
    ok = semi.found and semi.witness.counts == (1, 1, 2)
    root = analysis.root_closure_probe(parse_subset(dinf, "{a, a^-1, t}"), 10)
    ok &= not root.found
    witness = semi.witness.text() if semi.found else "none"
    return ok, (
        f"seminormality witness: {witness}; "
        f"root-closure counterexamples found: {int(root.found)} (bound 10)"
    )


# -- criterion 5: three-reflection closed forms vs brute force ----------------------------


def _c05() -> tuple[bool, str]:
    """Closed-form reflection atom inventories equal scans up to length 20."""
    dinf = infinite_dihedral()
    ok = True
    per = []
    for i, j, k in ((1, 2, 4), (1, 3, 5), (2, 3, 7), (0, 2, 4)):
        names = ", ".join("t" if e == 0 else f"a^{e}*t" for e in (i, j, k))
        gnd = parse_subset(dinf, "{" + names + "}")
        closed = analysis.enumerate_atoms(gnd)
        scan = analysis.enumerate_atoms(gnd, max_len=20, method="scan")
        want = {a.counts for a in closed.atoms if len(a) <= 20}
        got = {a.counts for a in scan.atoms}
        ok &= want == got
        per.append(f"({i},{j},{k}): {len(got)} atoms match")
    return ok, "; ".join(per)


# -- criterion 6: the omega witness family -------------------------------------------------


def _c06() -> tuple[bool, str]:
    """Minimal divisible subproducts grow linearly along the witness family."""
    gnd = parse_subset(infinite_dihedral(), "{a, t}")
    inv = analysis.enumerate_atoms(gnd, max_len=12)
    member = analysis.membership_function(gnd, 32)
    atoms = {a.counts: a for a in inv.atoms}
    base = atoms[(2, 2)]
    ok = True
    vals = []
    for n in range(1, 5):
        u = atoms[(2 * n, 2)]
        val = analysis.omega_witness_value(u, [base] * n, member)
        ok &= val == n
        vals.append(f"n={n}: {val}")
    return ok, "minimal divisible subproduct of (a^[2], t^[2])^n: " + ", ".join(vals)


# -- criterion 7: length sets over mixed-sign rotations with a reflection -----------------


def _c07() -> tuple[bool, str]:
    """L(t^[4] a^[2n] (a^-1)^[2n]) contains 2 and 2n+2; full set frozen at n=2."""
    gnd = parse_subset(infinite_dihedral(), "{a, a^-1, t}")
    inv = analysis.enumerate_atoms(gnd, max_len=16)
    member = analysis.membership_function(gnd, 16)
    ok = True
    per = []
    for n in (1, 2, 3):
        s = Sequence(gnd, (2 * n, 2 * n, 4))
        lens = analysis.set_of_lengths(s, inv, member)
        ok &= {2, 2 * n + 2} <= set(lens)
        if n == 2:
            ok &= lens == (2, 4, 6)
        per.append(f"n={n}: L={list(lens)}")
    return ok, "; ".join(per)


# -- criterion 8: the weakly-Krull fixture table -------------------------------------------


_WEAKLY_KRULL_FIXTURES = (
    ("{a, a^-1, t}", True),
    ("{a^2, a^-3, a^7*t}", True),
    ("{a*t, a^3*t}", True),
    ("{a*t, a^3*t, a^4*t}", True),
    ("{a*t, a^3*t, a^4*t, a^9*t}", False),
    ("{a, a^2, a*t}", False),
    ("{a, a*t, a^2*t}", False),
    ("{a^6, a^10, a^-15, t}", True),
    ("{a^2, a^3, a^-5, t}", False),
)


def _c08() -> tuple[bool, str]:
    """Nine weakly-Krull verdicts, cofactor detail, and localization cross-checks."""
    dinf = infinite_dihedral()
    wrong = []
    for text, want in _WEAKLY_KRULL_FIXTURES:
        verdict, _ = dih.weakly_krull(parse_subset(dinf, text))
        if verdict is not want:
            wrong.append(text)
    ok = not wrong
    _, cert = dih.weakly_krull(parse_subset(dinf, "{a^6, a^10, a^-15, t}"))
    cof = cert.get("cofactors", {}).get("cofactors")
    ok &= cof == {6: 5, 10: 3, 15: 2}
    gap_true = analysis.localization_gap_search(
        parse_subset(dinf, "{a^6, a^10, a^-15, t}"), 6, 8
    )
    gap_false = analysis.localization_gap_search(
        parse_subset(dinf, "{a^2, a^3, a^-5, t}"), 6, 8
    )
    ok &= gap_true is None and gap_false is not None
    parts = [
        "9/9 verdicts" if not wrong else "wrong verdicts: " + ", ".join(wrong),
        f"cofactors {cof}",
        f"localization gap on the true ground: {gap_true is not None}",
        f"on the false ground: {gap_false is not None}",
    ]
    return ok, "; ".join(parts)


# -- criterion 9: the interval property over the symmetric group on 3 letters -------------


def _c09() -> tuple[bool, str]:
    """Scanned U_k sets over the full 6-element nonabelian group are intervals."""
    rep = analysis.length_invariants(_whole(finite_dihedral(3)), 12, 4)
    gaps = [
        k
        for k, vals in rep.u_k.items()
        if vals and vals != tuple(range(vals[0], vals[-1] + 1))
    ]
    ok = (
        not gaps
        and rep.delta == (1, 2, 3, 4)
        and rep.elasticity == 3
        and rep.catenary == 6
    )
    return ok, (
        f"U_k intervals for k<=4 over {rep.sequences_seen} sequences "
        f"(gaps at k={gaps or 'none'}); delta={list(rep.delta)}, "
        f"elasticity={rep.elasticity}, catenary={rep.catenary}"
    )


# -- criterion 10: inequality chains -------------------------------------------------------


def _chain_instance(
    label: str,
    gnd: GroundSet,
    scan_size: int,
    tame_bound: int,
    tame_size: int,
    problems: list[str],
    inv: analysis.AtomInventory | None = None,
) -> bool:
    """Check sup-gap <= catenary <= omega <= tame and the per-atom tame identity
    on one ground; returns True when every tame bound resolved exactly."""
    rep = analysis.length_invariants(gnd, scan_size, 4)
    sup_delta = max(rep.delta, default=0)
    if sup_delta > rep.catenary:
        problems.append(f"{label}: sup-gap {sup_delta} > catenary {rep.catenary}")
    dav = analysis.davenport(gnd)
    if dav.status == "exact":
        d_value = dav.value.value
        for k, rho in rep.rho_k.items():
            if 2 * rho > k * d_value:
                problems.append(f"{label}: rho_{k}={rho} > k*D/2={k * d_value / 2}")
    if inv is None:
        inv = analysis.enumerate_atoms(gnd)
    omega_all = 0
    omega_np = t_np = 0  # maxima over atoms that are not prime
    all_exact = True
    for u in inv.atoms:
        tb = analysis.tame_bounds(u, inv, tame_bound, size_bound=tame_size)
        om, ta, tt = tb["omega"], tb["tau"], tb["t"]
        exact = all(
            isinstance(x.certificate, ExactWithinBound) for x in (om, ta, tt)
        )
        omega_all = max(omega_all, om.value)
        if not exact:
            all_exact = False
            continue
        if om.value <= 1:
            # a prime atom occurs in every factorization it divides, so its
            # tame distance and cofactor length are both zero
            if tt.value != 0 or ta.value != 0:
                problems.append(
                    f"{label}: prime atom {u.text()} has t={tt.value}, tau={ta.value}"
                )
        else:
            if tt.value != max(om.value, 1 + ta.value):
                problems.append(
                    f"{label}: atom {u.text()} has t={tt.value}"
                    f" != max({om.value}, 1+{ta.value})"
                )
            omega_np = max(omega_np, om.value)
            t_np = max(t_np, tt.value)
    if all_exact:
        if rep.catenary > omega_all:
            problems.append(f"{label}: catenary {rep.catenary} > omega {omega_all}")
        if omega_np > max(t_np, 1):
            problems.append(f"{label}: omega {omega_np} > tame {t_np}")
    return all_exact


def _scan_instance(label: str, gnd: GroundSet, scan_size: int, problems: list[str]):
    """Check sup-gap <= catenary and rho_k <= k*D/2 on one ground."""
    rep = analysis.length_invariants(gnd, scan_size, 4)
    sup_delta = max(rep.delta, default=0)
    if sup_delta > rep.catenary:
        problems.append(f"{label}: sup-gap {sup_delta} > catenary {rep.catenary}")
    dav = analysis.davenport(gnd)
    if dav.status == "exact":
        d_value = dav.value.value
        for k, rho in rep.rho_k.items():
            if 2 * rho > k * d_value:
                problems.append(f"{label}: rho_{k}={rho} > k*D/2={k * d_value / 2}")


def _c10() -> tuple[bool, str]:
    """Gap, catenary, omega, and tame values satisfy the standard chains."""
    dinf = infinite_dihedral()
    problems: list[str] = []
    full = 0
    chains = (
        ("C2", _whole(cyclic(2)), 8, 6, 8, None),
        ("C3", _whole(cyclic(3)), 9, 6, 9, None),
        ("C4", _whole(cyclic(4)), 10, 6, 10, None),
        ("C2xC2", _whole(elementary_two(2)), 10, 6, 10, None),
        ("refl(1,2,4)", parse_subset(dinf, "{a*t, a^2*t, a^4*t}"), 14, 8, 14, None),
        ("refl(0,2,4)", parse_subset(dinf, "{t, a^2*t, a^4*t}"), 12, 8, 12, None),
    )
    for label, gnd, scan_size, tame_bound, tame_size, inv in chains:
        full += _chain_instance(
            label, gnd, scan_size, tame_bound, tame_size, problems, inv
        )
    gnd_at = parse_subset(dinf, "{a, t}")
    _chain_instance(
        "{a,t}",
        gnd_at,
        12,
        6,
        12,
        problems,
        analysis.enumerate_atoms(gnd_at, max_len=12),
    )
    scans = (
        ("C5", _whole(cyclic(5)), 10),
        ("C2^3", _whole(elementary_two(3)), 10),
        ("C6", _whole(cyclic(6)), 10),
        ("C7", _whole(cyclic(7)), 9),
        ("C8", _whole(cyclic(8)), 8),
        ("S3", _whole(finite_dihedral(3)), 10),
    )
    for label, gnd, scan_size in scans:
        _scan_instance(label, gnd, scan_size, problems)
    ok = not problems
    detail = (
        f"chains hold on 13 instances ({full} with every tame bound exact)"
        if ok
        else "; ".join(problems[:6])
    )
    return ok, detail


# -- criterion 11: oracle equivalence -------------------------------------------------------


def _box_audit(max_size: int, max_exp: int, include_identity: bool) -> tuple[int, int]:
    """Compare the split decider against incremental reach masks on every
    dihedral multiset of size <= max_size with exponents in [-max_exp, max_exp].

    Multisets are canonical base-32 digit strings of element indices; each
    layer derives a multiset's reach (rotations, reflections) from its
    one-element-smaller parents, independently of the decider under test."""
    elems = [(False, k) for k in range(-max_exp, max_exp + 1) if k or include_identity]
    elems += [(True, k) for k in range(-max_exp, max_exp + 1)]
    m = len(elems)
    if m >= 32:
        raise ValueError("too many elements for base-32 multiset keys")
    off = max_size * max_exp
    idbit = 1 << off
    is_refl = [e[0] for e in elems]
    exp = [e[1] for e in elems]
    checked = 0
    bad = 0
    prev: dict[int, tuple[int, int]] = {0: (idbit, 0)}
    prev_last = {0: 0}
    for size in range(1, max_size + 1):
        last_layer = size == max_size
        cur: dict[int, tuple[int, int]] | None = None if last_layer else {}
        cur_last: dict[int, int] | None = None if last_layer else {}
        for pkey, start in prev_last.items():
            for idx in range(start, m):
                ckey = pkey * 32 + idx + 1
                digits = []
                k = ckey
                while k:
                    k, d = divmod(k, 32)
                    digits.append(d - 1)
                digits.reverse()
                rot = refl = 0
                n_digits = len(digits)
                for j in range(n_digits):
                    if j < n_digits - 1 and digits[j + 1] == digits[j]:
                        continue  # removing either copy gives the same parent
                    power = 32 ** (n_digits - 1 - j)
                    parent_key = (ckey // (power * 32)) * power + ckey % power
                    prot, prefl = prev[parent_key]
                    e = exp[digits[j]]
                    if is_refl[digits[j]]:
                        nrot = prefl >> e if e >= 0 else prefl << -e
                        nrefl = prot << e if e >= 0 else prot >> -e
                    else:
                        nrot = prot << e if e >= 0 else prot >> -e
                        nrefl = prefl >> e if e >= 0 else prefl << -e
                    rot |= nrot
                    refl |= nrefl
                by_reach = bool(rot >> off & 1)
                counts: dict[int, int] = {}
                for d in digits:
                    counts[d] = counts.get(d, 0) + 1
                items = sorted(
                    ((is_refl[d], exp[d], c) for d, c in counts.items()),
                    key=lambda it: (not it[0], it[1]),
                )
                by_split = dih._feasible(items)
                checked += 1
                if by_reach != by_split:
                    bad += 1
                if not last_layer:
                    cur[ckey] = (rot, refl)
                    cur_last[ckey] = idx
        if not last_layer:
            prev, prev_last = cur, cur_last
    return checked, bad


def _random_oracle_trials(trials: int, seed: int) -> tuple[int, int]:
    """Compare layered products against the ordered-product walk on random
    sequences drawn across every group family."""
    rng = random.Random(seed)
    families = (
        [cyclic(n) for n in range(2, 11)]
        + [finite_dihedral(n) for n in range(2, 7)]
        + [elementary_two(r) for r in (1, 2, 3)]
        + [integers(), infinite_dihedral()]
    )
    agree = 0
    for trial in range(trials):
        grp = families[trial % len(families)]
        if grp.kind == "integers":
            pool = [Element("int", k) for k in range(-5, 6)]
        elif grp.kind == "infinite-dihedral":
            pool = [Element("rot", k) for k in range(-4, 5)] + [
                Element("refl", k) for k in range(-4, 5)
            ]
        else:
            pool = list(grp.elements())
        support = rng.sample(pool, min(len(pool), rng.randint(2, 5)))
        gnd = ground(grp, support)
        counts = [0] * len(gnd)
        for _ in range(rng.randint(1, 7)):
            counts[rng.randrange(len(gnd))] += 1
        s = Sequence(gnd, tuple(counts))
        if products.product_set_dp(s) == products.product_set_perm(s):
            agree += 1
    return agree, trials


def _c11() -> tuple[bool, str]:
    """Layered products, ordered walks, and the split decider always agree."""
    agree, trials = _random_oracle_trials(500, seed=11)
    ok = agree == trials
    big_checked, big_bad = _box_audit(8, 5, include_identity=False)
    id_checked, id_bad = _box_audit(5, 2, include_identity=True)
    ok &= big_bad == 0 and id_bad == 0
    return ok, (
        f"random layered-vs-ordered: {agree}/{trials}; "
        f"dihedral box ({big_checked} multisets): {big_bad} mismatches; "
        f"identity box ({id_checked} multisets): {id_bad} mismatches"
    )


# -- driver ---------------------------------------------------------------------------------


_CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]], float]] = {
    1: ("elementary-two-davenport", _c01, 30.0),
    2: ("cyclic-davenport-two-ways", _c02, 30.0),
    3: ("rotation-with-reflection-atoms", _c03, 10.0),
    4: ("closure-probes", _c04, 10.0),
    5: ("three-reflection-closed-form", _c05, 60.0),
    6: ("omega-witness-family", _c06, 30.0),
    7: ("mixed-sign-length-sets", _c07, 60.0),
    8: ("weakly-krull-table", _c08, 60.0),
    9: ("interval-property", _c09, 120.0),
    10: ("inequality-chains", _c10, 120.0),
    11: ("oracle-equivalence", _c11, 120.0),
}

SUITES: dict[str, tuple[int, ...]] = {
    "davenport": (1, 2),
    "dihedral": (3, 5, 8),
    "probes": (4,),
    "witness": (6, 7),
    "invariants": (9, 10),
    "oracle": (11,),
    "all": tuple(range(1, 12)),
}


def run_criterion(number: int) -> CriterionResult:
    """Run one acceptance criterion and time it."""
    name, fn, limit = _CRITERIA[number]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashed criterion is a failed criterion
        ok, detail = False, f"error: {exc!r}"
    elapsed = time.perf_counter() - t0
    if ok and elapsed > limit:
        ok = False
        detail += f"; exceeded the {limit:.0f}s limit"
    return CriterionResult(number, name, ok, detail, elapsed, limit)


def run_suite(suite: str = "all") -> list[CriterionResult]:
    """Run a named verification suite (criteria in ascending order)."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return [run_criterion(n) for n in SUITES[suite]]
