"""Tests for ground sets, count-vector sequences, and their parsers."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodone.groups import Element, GroupFormatError, infinite_dihedral
from prodone.sequences import (
    Sequence,
    SequenceError,
    empty,
    from_pairs,
    ground,
    parse_sequence,
    parse_subset,
    sequence_from_json,
    subsequences,
)

DINF = infinite_dihedral()
GND = parse_subset(DINF, "{a, a^-1, t}")


def vectors(m=3, top=6):
    return st.tuples(*[st.integers(0, top) for _ in range(m)])


def test_ground_canonical_order():
    """Ground sets sort rotations before reflections, by exponent."""
    g = parse_subset(DINF, "{t, a^3, a^-2}")
    assert g.text() == "{a^-2, a^3, t}"
    assert g.index(Element("rot", 3)) == 1


def test_ground_dedupes_and_rejects_outsiders():
    """The ground helper dedupes; elements of the wrong group are refused."""
    g = ground(DINF, [Element("rot", 1), Element("rot", 1)])
    assert len(g) == 1
    with pytest.raises((SequenceError, GroupFormatError)):
        ground(DINF, [Element("fin", 0)])


def test_sequence_views():
    """Length, support, terms, and multiplicity agree with the counts."""
    s = Sequence(GND, (2, 0, 3))
    assert len(s) == 5
    assert s.support() == (Element("rot", -1), Element("refl", 0))
    assert s.v(Element("refl", 0)) == 3
    assert s.v(Element("rot", 1)) == 0
    assert len(s.terms()) == 5


@given(vectors(), vectors())
@settings(max_examples=100)
def test_add_then_subtract_round_trips(a, b):
    """(s + t).subtract(t) == s."""
    s, t = Sequence(GND, a), Sequence(GND, b)
    assert (s + t).subtract(t) == s


@given(vectors())
@settings(max_examples=100)
def test_empty_is_additive_identity(a):
    """Adding the empty sequence changes nothing."""
    s = Sequence(GND, a)
    assert s + empty(GND) == s


def test_subtract_refuses_negative_multiplicity():
    """Subtraction below zero raises."""
    with pytest.raises(SequenceError):
        Sequence(GND, (1, 0, 0)).subtract(Sequence(GND, (2, 0, 0)))


def test_parse_sequence_known_forms():
    """Bracketed multiplicities and repeats parse as documented."""
    s = parse_sequence(DINF, "a^2, a^6, t^[2]")
    assert len(s) == 4
    assert s.v(Element("refl", 0)) == 2
    assert s.v(Element("rot", 2)) == 1
    t = parse_sequence(DINF, "a, a, a")
    assert t.v(Element("rot", 1)) == 3


def test_parse_sequence_over_ground():
    """A sequence parsed over a ground set indexes into that ground set."""
    s = parse_sequence(DINF, "t^[4], a^[2]", over=GND)
    assert s.ground is GND
    assert s.counts == (0, 2, 4)
    with pytest.raises(SequenceError):
        parse_sequence(DINF, "a^9", over=GND)


def test_from_pairs_and_json_round_trip():
    """to_json() output feeds back through sequence_from_json."""
    s = from_pairs(GND, [(Element("rot", 1), 2), (Element("refl", 0), 1)])
    data = s.to_json()
    t = sequence_from_json(DINF, data, over=GND)
    assert t == s


@given(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)))
@settings(max_examples=60)
def test_subsequence_count(v):
    """S has prod(c_i + 1) subsequences including the empty one."""
    s = Sequence(GND, v)
    want = 1
    for c in v:
        want *= c + 1
    assert sum(1 for _ in subsequences(s)) == want


def test_subsequences_proper_nonempty_flags():
    """proper drops S itself; nonempty drops the empty subsequence."""
    s = Sequence(GND, (1, 1, 0))
    all_subs = list(subsequences(s))
    assert len(all_subs) == 4
    assert len(list(subsequences(s, proper=True))) == 3
    assert len(list(subsequences(s, nonempty=True))) == 3
    assert len(list(subsequences(s, proper=True, nonempty=True))) == 2
