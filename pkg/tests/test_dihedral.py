"""Tests for infinite dihedral closed forms against brute-force oracles."""

from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodone import dihedral as dih
from prodone.analysis import enumerate_atoms
from prodone.groups import Element, infinite_dihedral
from prodone.products import is_product_one_perm
from prodone.sequences import Sequence, ground, parse_sequence, parse_subset

DINF = infinite_dihedral()


@st.composite
def dihedral_sequences(draw, max_len=7, max_exp=4):
    pool = [Element("rot", k) for k in range(-max_exp, max_exp + 1)] + [
        Element("refl", k) for k in range(-max_exp, max_exp + 1)
    ]
    support = draw(st.sets(st.sampled_from(pool), min_size=1, max_size=4))
    gnd = ground(DINF, sorted(support, key=lambda e: (e.tag, e.k)))
    m = len(gnd)
    counts = [0] * m
    for _ in range(draw(st.integers(1, max_len))):
        counts[draw(st.integers(0, m - 1))] += 1
    return Sequence(gnd, tuple(counts))


@given(dihedral_sequences())
@settings(max_examples=200, deadline=None)
def test_split_decider_matches_permutation_walk(s):
    """The balanced-split membership test equals the ordered-product walk."""
    assert dih.is_product_one(s) == is_product_one_perm(s)


@given(dihedral_sequences())
@settings(max_examples=100, deadline=None)
def test_odd_reflection_count_never_product_one(s):
    """A product-one sequence must use an even number of reflections."""
    refls = sum(
        c for e, c in zip(s.ground.elements, s.counts) if e.tag == "refl"
    )
    if refls % 2:
        assert not dih.is_product_one(s)


@given(dihedral_sequences())
@settings(max_examples=150, deadline=None)
def test_decompose_witnesses_validate(s):
    """decompose returns a validating split exactly on product-one sequences."""
    split = dih.decompose(s)
    if dih.is_product_one(s):
        assert split is not None and split.validate()
        assert split.whole().counts == s.counts
    else:
        assert split is None


def test_two_reflection_atoms_frozen():
    """Over two distinct reflections the only atoms are the two squares."""
    gnd = parse_subset(DINF, "{a*t, a^3*t}")
    got = {a.text() for a in dih.two_reflection_atoms(gnd)}
    assert got == {"a*t^[2]", "a^3*t^[2]"}


def test_three_reflection_atoms_frozen():
    """Over exponents (1, 2, 4): three squares plus the balanced atom (2, 3, 1)."""
    gnd = parse_subset(DINF, "{a*t, a^2*t, a^4*t}")
    atoms = dih.three_reflection_atoms(gnd)
    lengths = sorted(len(a) for a in atoms)
    assert lengths == [2, 2, 2, 6]
    (big,) = [a for a in atoms if len(a) == 6]
    assert big.counts == (2, 3, 1)


def test_three_reflection_atoms_match_scan():
    """The closed form equals an exhaustive scan for several exponent triples."""
    for i, j, k in ((1, 2, 4), (1, 3, 5), (0, 2, 4)):
        names = ", ".join("t" if e == 0 else f"a^{e}*t" for e in (i, j, k))
        gnd = parse_subset(DINF, "{" + names + "}")
        closed = {a.counts for a in dih.three_reflection_atoms(gnd)}
        scan = {
            a.counts
            for a in enumerate_atoms(gnd, max_len=12, method="scan").atoms
        }
        assert closed == scan


def test_rotation_reflection_atoms_frozen():
    """Over {a, t} the atoms up to length 12 are t^[2] and a^[2n] t^[2]."""
    gnd = parse_subset(DINF, "{a, t}")
    got = [a.counts for a in dih.rotation_reflection_atoms(gnd, max_len=12)]
    assert got == [(0, 2)] + [(2 * n, 2) for n in range(1, 6)]


def test_infinite_atom_family_detection():
    """A rotation with a reflection yields an infinite atom family; pure cases do not."""
    assert dih.infinite_atom_family(parse_subset(DINF, "{a, t}")) is not None
    assert dih.infinite_atom_family(parse_subset(DINF, "{a*t, a^3*t}")) is None
    assert dih.infinite_atom_family(parse_subset(DINF, "{a, a^-1}")) is None


def test_finitely_generated_and_tame_flags():
    """Generation and tameness classifications on the landmark subsets."""
    mixed = parse_subset(DINF, "{a, a^-1, t}")
    assert not dih.is_finitely_generated(mixed)
    assert not dih.is_tame(mixed)
    assert not dih.is_locally_tame(mixed)
    refl = parse_subset(DINF, "{a*t, a^3*t}")
    assert dih.is_finitely_generated(refl)
    assert dih.is_tame(refl)
    rots = parse_subset(DINF, "{a, a^-1}")
    assert dih.is_finitely_generated(rots)
    assert dih.is_tame(rots)


def test_coprime_cofactors_knowns():
    """The landmark value sets succeed and fail as documented."""
    ok, b, _ = dih.coprime_cofactors([6, 10, 15])
    assert ok and b == {6: 5, 10: 3, 15: 2}
    ok, _, _ = dih.coprime_cofactors([2, 3, 5])
    assert not ok
    ok, b, _ = dih.coprime_cofactors([2, 3])
    assert ok and b == {2: 3, 3: 2}
    ok, b, _ = dih.coprime_cofactors([4])
    assert ok and b == {4: 1}


@given(st.sets(st.integers(1, 40), min_size=1, max_size=4))
@settings(max_examples=150)
def test_coprime_cofactors_certificate(values):
    """When the test passes, k * b_k is constant and the b_k are coprime."""
    vals = sorted(values)
    ok, b, _ = dih.coprime_cofactors(vals)
    if ok and len(vals) > 1:
        d = 0
        for v in vals:
            d = gcd(d, v)
        prods = {(v // d) * b[v] for v in vals}
        assert len(prods) == 1
        items = list(b.values())
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                assert gcd(items[i], items[j]) == 1


WEAKLY_KRULL_TABLE = (
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


@pytest.mark.parametrize("text,want", WEAKLY_KRULL_TABLE)
def test_weakly_krull_table(text, want):
    """Frozen weak-Krull verdicts for the nine landmark subsets."""
    verdict, cert = dih.weakly_krull(parse_subset(DINF, text))
    assert verdict is want
    assert "case" in cert


def test_classify_shape():
    """classify returns every structural flag plus the certificate."""
    out = dih.classify(parse_subset(DINF, "{a, a^-1, t}"))
    assert out["weakly_krull"] is True
    assert out["tame"] is False
    assert out["locally_tame"] is False
    assert out["finitely_generated"] is False
    assert out["weakly_krull_certificate"]["case"] == "one-reflection-mixed-signs"


def _witness_box_search(i, j, k, box=80):
    """Smallest witness (x, y, z) by direct search, or None within the box."""
    for z in range(1, box + 1):
        for x in range(1, box + 1):
            rem = k * z - i * x
            if rem <= 0 or rem % j:
                continue
            y = rem // j
            if gcd(x, gcd(y, z)) == 1 and (i * x) % k != 0:
                return x, y, z
    return None


@given(
    st.sets(st.integers(1, 100), min_size=3, max_size=3),
    st.integers(0, 5),
)
@settings(max_examples=50, deadline=None)
def test_relation_witness_against_box_search(values, perm):
    """The witness formula agrees with a bounded brute-force search."""
    vals = sorted(values)
    g = gcd(vals[0], gcd(vals[1], vals[2]))
    vals = [v // g for v in vals]
    orders = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    i, j, k = (vals[p] for p in orders[perm])
    exists, witness = dih.relation_witness(i, j, k)
    if exists:
        x, y, z = witness
        assert min(x, y, z) > 0
        assert i * x + j * y == k * z
        assert (i * x) % k != 0
        assert gcd(x, gcd(y, z)) == 1
    else:
        assert k == gcd(i, k) * gcd(j, k)
        assert _witness_box_search(i, j, k) is None


def test_relation_witness_knowns():
    """Spot values: witnesses exist unless k = gcd(i,k) * gcd(j,k)."""
    assert dih.relation_witness(6, 10, 15)[0] is False
    assert dih.relation_witness(2, 3, 5)[0] is True
    with pytest.raises(ValueError):
        dih.relation_witness(2, 2, 3)
    with pytest.raises(ValueError):
        dih.relation_witness(2, 4, 6)
