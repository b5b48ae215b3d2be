"""Tests for product sets and product-one membership, DP against the walk."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodone.groups import (
    Element,
    cyclic,
    elementary_two,
    finite_dihedral,
    infinite_dihedral,
    integers,
)
from prodone.products import (
    BudgetExceeded,
    is_product_one,
    is_product_one_free,
    is_product_one_perm,
    product_set,
    product_set_dp,
    product_set_perm,
)
from prodone.sequences import Sequence, ground, parse_sequence, parse_subset

DINF = infinite_dihedral()


@st.composite
def small_sequences(draw):
    """A sequence of total length <= 6 over a random group and support."""
    grp = draw(
        st.sampled_from(
            [cyclic(3), cyclic(6), finite_dihedral(3), elementary_two(2), DINF, integers()]
        )
    )
    if grp.kind == "integers":
        pool = [Element("int", k) for k in range(-4, 5)]
    elif grp.kind == "infinite-dihedral":
        pool = [Element("rot", k) for k in range(-3, 4)] + [
            Element("refl", k) for k in range(-3, 4)
        ]
    else:
        pool = grp.elements()
    support = draw(st.sets(st.sampled_from(pool), min_size=1, max_size=4))
    gnd = ground(grp, sorted(support, key=lambda e: (e.tag, e.k)))
    m = len(gnd)
    counts = [0] * m
    for _ in range(draw(st.integers(1, 6))):
        counts[draw(st.integers(0, m - 1))] += 1
    return Sequence(gnd, tuple(counts))


@given(small_sequences())
@settings(max_examples=150, deadline=None)
def test_dp_matches_permutation_walk(s):
    """The layered DP and the ordered-product walk give the same pi(S)."""
    assert product_set_dp(s) == product_set_perm(s)


@given(small_sequences())
@settings(max_examples=150, deadline=None)
def test_membership_matches_permutation_walk(s):
    """is_product_one agrees with the ordered walk on every family."""
    assert is_product_one(s) == is_product_one_perm(s)


@given(small_sequences())
@settings(max_examples=100, deadline=None)
def test_product_set_contains_the_canonical_order(s):
    """The product of terms in canonical order is always in pi(S)."""
    grp = s.ground.group
    acc = grp.identity()
    for e in s.terms():
        acc = grp.mul(acc, e)
    assert acc in product_set(s)


def test_abelian_collapse():
    """Over abelian groups pi(S) is a single point."""
    for text, grp in (
        ("g, g^2, g^[3]", cyclic(4)),
        ("3, -5, 2^[4]", integers()),
    ):
        s = parse_sequence(grp, text)
        assert len(product_set(s)) == 1


def test_integer_product_set_is_the_sum():
    """Over the integers pi(S) = {sum of the terms}."""
    s = parse_sequence(integers(), "3, -5, 2^[4]")
    assert product_set(s) == {Element("int", 6)}


def test_known_dihedral_membership():
    """A balanced reflection split multiplies to one; odd counts cannot."""
    assert is_product_one(parse_sequence(DINF, "a, a^-1, t^[2]"))
    assert not is_product_one(parse_sequence(DINF, "a^2, a^6, t^[2]"))
    assert not is_product_one(parse_sequence(DINF, "t^[3]"))
    assert is_product_one(parse_sequence(DINF, "a*t, a^3*t, a^2*t, t"))


def test_empty_sequence_is_product_one():
    """The empty sequence multiplies to the identity."""
    gnd = parse_subset(DINF, "{a, t}")
    assert is_product_one(Sequence(gnd, (0, 0)))


def test_product_one_free_knowns():
    """g^[n-1] is product-one free in cyclic(n); g^[n] is not."""
    g5 = cyclic(5)
    gnd = ground(g5, [Element("fin", 1)])
    assert is_product_one_free(Sequence(gnd, (4,)))
    assert not is_product_one_free(Sequence(gnd, (5,)))


def test_permutation_walk_budget():
    """The ordered walk refuses sequences longer than its budget."""
    gnd = ground(cyclic(3), [Element("fin", 1)])
    with pytest.raises(BudgetExceeded):
        product_set_perm(Sequence(gnd, (9,)))


def test_dp_pair_budget():
    """The layered DP refuses once the (sub-multiset, element) budget is hit."""
    s = parse_sequence(integers(), "1^[9]")
    with pytest.raises(BudgetExceeded):
        product_set_dp(s, pair_budget=3)


def test_product_set_methods_agree():
    """method='dp' and method='perm' agree through the front door."""
    s = parse_sequence(finite_dihedral(4), "a, t, a^2, a*t")
    assert product_set(s, method="dp") == product_set(s, method="perm")
    with pytest.raises(ValueError):
        product_set(s, method="nope")
