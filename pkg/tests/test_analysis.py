"""Tests for atom inventories, factorizations, invariants, and probes."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodone.analysis import (
    AtomInventory,
    davenport,
    enumerate_atoms,
    factorizations,
    in_localization,
    is_atom,
    length_invariants,
    localization_gap_search,
    membership_function,
    omega_bound,
    omega_witness_value,
    root_closure_probe,
    seminormality_probe,
    set_of_lengths,
    tame_bounds,
    condensed_subset,
    finitary_witness,
    products_in_derived_subgroup,
)
from prodone.certificates import Exact, ExactWithinBound
from prodone.groups import (
    Element,
    cyclic,
    elementary_two,
    finite_dihedral,
    infinite_dihedral,
    integers,
)
from prodone.sequences import Sequence, ground, parse_sequence, parse_subset

DINF = infinite_dihedral()


def whole(group):
    return ground(group, group.elements())


# -- atoms -----------------------------------------------------------------------


def test_atoms_of_whole_cyclic_three():
    """C3 has four atoms: e, g g^2, g^[3], (g^2)^[3]."""
    inv = enumerate_atoms(whole(cyclic(3)))
    assert isinstance(inv.certificate, Exact)
    texts = {a.text() for a in inv.atoms}
    assert texts == {"e", "g, g^2", "g^[3]", "g^2^[3]"}


def test_atoms_of_single_generator():
    """Over {g} in cyclic(3) the only atom is g^[3]."""
    gnd = parse_subset(cyclic(3), "{g}")
    inv = enumerate_atoms(gnd)
    assert [a.text() for a in inv.atoms] == ["g^[3]"]


def test_atoms_over_integers():
    """Over {2, -3} the atoms are the minimal balanced powers."""
    gnd = parse_subset(integers(), "{2, -3}")
    inv = enumerate_atoms(gnd)
    assert isinstance(inv.certificate, Exact)
    assert [a.counts for a in inv.atoms] == [(2, 3)]


def test_atoms_include_identity_singleton():
    """The identity element alone is an atom wherever it appears."""
    gnd = parse_subset(integers(), "{0, 1, -1}")
    inv = enumerate_atoms(gnd)
    assert (0, 1, 0) in {a.counts for a in inv.atoms}


def test_is_atom_spot_checks():
    """Direct atom membership on landmark sequences."""
    assert is_atom(parse_sequence(cyclic(3), "g, g^2"))
    assert not is_atom(parse_sequence(cyclic(3), "g^[3], g^2^[3]"))
    assert is_atom(parse_sequence(DINF, "a^[2], t^[2]"))
    with pytest.raises(ValueError):
        is_atom(parse_sequence(cyclic(3), "g"))


def test_dihedral_scan_needs_a_bound():
    """The infinite rotation-reflection family refuses an unbounded listing."""
    with pytest.raises(ValueError):
        enumerate_atoms(parse_subset(DINF, "{a, t}"))


# -- davenport --------------------------------------------------------------------


def test_davenport_exact_cases():
    """Exact Davenport constants across the closed-form families."""
    assert davenport(whole(cyclic(5))).value.value == 5
    assert davenport(whole(elementary_two(3))).value.value == 4
    assert davenport(parse_subset(integers(), "{2, -3}")).value.value == 5
    assert davenport(parse_subset(DINF, "{a*t, a^3*t}")).value.value == 2
    res = davenport(parse_subset(DINF, "{a*t, a^2*t, a^4*t}"))
    assert res.status == "exact" and res.value.value == 6


def test_davenport_infinite_with_witness():
    """A rotation with a reflection certifies an infinite Davenport constant."""
    res = davenport(parse_subset(DINF, "{a, t}"))
    assert res.status == "infinite"
    w = res.witness.make(3)
    assert len(w) == 8
    assert is_atom(w)


def test_davenport_lower_bound_on_many_reflections():
    """Four or more reflections fall back to a scanned lower bound."""
    res = davenport(parse_subset(DINF, "{a*t, a^3*t, a^4*t, a^9*t}"), max_len=8)
    assert res.status == "lower-bound"
    assert res.value.value >= 2


# -- factorizations ----------------------------------------------------------------


def test_known_length_set_cyclic_three():
    """L(g^[3] (g^2)^[3]) = {2, 3} over the full cyclic(3)."""
    s = parse_sequence(cyclic(3), "g^[3], g^2^[3]")
    assert set_of_lengths(s) == (2, 3)


def test_known_length_set_mixed_signs():
    """L(t^[4] a^[2] (a^-1)^[2]) = {2, 4} over {a, a^-1, t}."""
    gnd = parse_subset(DINF, "{a, a^-1, t}")
    s = parse_sequence(DINF, "t^[4], a^[2], a^-1^[2]", over=gnd)
    inv = enumerate_atoms(gnd, max_len=8)
    member = membership_function(gnd, 8)
    assert set_of_lengths(s, inv, member) == (2, 4)


def test_factorizations_of_an_atom_is_itself():
    """An atom factors in exactly one way: as itself."""
    s = parse_sequence(cyclic(3), "g, g^2")
    facs = factorizations(s)
    assert facs.lengths() == (1,)
    assert len(facs.factorizations) == 1


def test_factorization_refuses_non_product_one():
    """Only product-one sequences factor."""
    with pytest.raises(ValueError):
        factorizations(parse_sequence(cyclic(3), "g"))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_factorizations_concatenate_to_target(data):
    """Every factorization's atoms sum back to the factored sequence."""
    grp = data.draw(st.sampled_from([cyclic(4), finite_dihedral(3)]))
    gnd = whole(grp)
    m = len(gnd)
    member = membership_function(gnd, 2 * m)
    vec = tuple(data.draw(st.integers(0, 2)) for _ in range(m))
    if not member(vec):
        return
    s = Sequence(gnd, vec)
    inv = enumerate_atoms(gnd)
    for z in factorizations(s, inv, member).factorizations:
        total = [0] * m
        for idx in z:
            for i, c in enumerate(inv.atoms[idx].counts):
                total[i] += c
        assert tuple(total) == vec


def test_inventory_minimality_spot_check():
    """Dropping one atom from the inventory loses a factorization target."""
    gnd = whole(cyclic(3))
    inv = enumerate_atoms(gnd)
    member = membership_function(gnd, 6)
    pair = next(a for a in inv.atoms if a.text() == "g, g^2")
    reduced = AtomInventory(
        gnd, tuple(a for a in inv.atoms if a != pair), inv.certificate
    )
    assert factorizations(pair, inv, member).factorizations
    assert not factorizations(pair, reduced, member).factorizations


# -- length-set invariants -----------------------------------------------------------


def test_invariants_frozen_cyclic_three():
    """Frozen invariant table for {g, g^2} in cyclic(3) scanned to size 9."""
    rep = length_invariants(parse_subset(cyclic(3), "{g, g^2}"), 9, 3)
    assert rep.delta == (1,)
    assert rep.elasticity == Fraction(3, 2)
    assert rep.catenary == 3
    assert rep.rho_k == {1: 1, 2: 3, 3: 4}
    assert rep.lambda_k == {1: 1, 2: 2, 3: 2}
    assert rep.u_k == {1: (1,), 2: (2, 3), 3: (2, 3, 4)}


@pytest.mark.parametrize("n", (3, 4))
def test_u_k_intervals_cyclic(n):
    """Every scanned U_k over a whole cyclic group is an interval."""
    rep = length_invariants(whole(cyclic(n)), 10, 4)
    for k, vals in rep.u_k.items():
        assert vals == tuple(range(vals[0], vals[-1] + 1)), f"gap in U_{k}"


def test_elasticity_dominates_rho_and_lambda_ratios():
    """elasticity >= rho_k / k and >= k / lambda_k for every scanned k."""
    rep = length_invariants(whole(cyclic(4)), 10, 4)
    for k in rep.rho_k:
        assert rep.elasticity >= Fraction(rep.rho_k[k], k)
        assert rep.elasticity >= Fraction(k, rep.lambda_k[k])


# -- tame invariants -----------------------------------------------------------------


def test_omega_of_full_power_atom():
    """omega(g^[3]) = 3 over the whole cyclic(3), exactly within bound 6."""
    gnd = whole(cyclic(3))
    inv = enumerate_atoms(gnd)
    u = next(a for a in inv.atoms if a.text() == "g^[3]")
    got = omega_bound(u, inv, 6)
    assert got.value == 3
    assert isinstance(got.certificate, ExactWithinBound)


def test_tame_identity_on_non_prime_atom():
    """t = max(omega, 1 + tau) for the mixed atom of cyclic(3)."""
    gnd = whole(cyclic(3))
    inv = enumerate_atoms(gnd)
    u = next(a for a in inv.atoms if a.text() == "g, g^2")
    tb = tame_bounds(u, inv, 6, size_bound=9)
    assert tb["omega"].value == 2
    assert tb["tau"].value == 2
    assert tb["t"].value == 3
    assert tb["t"].value == max(tb["omega"].value, 1 + tb["tau"].value)
    assert all(isinstance(v.certificate, ExactWithinBound) for v in tb.values())


def test_prime_atom_has_zero_tame_degree():
    """A prime atom (omega = 1) has t = 0 and tau = 0."""
    gnd = whole(cyclic(2))
    inv = enumerate_atoms(gnd)
    u = next(a for a in inv.atoms if a.text() == "g^[2]")
    tb = tame_bounds(u, inv, 6, size_bound=8)
    assert tb["omega"].value == 1
    assert tb["tau"].value == 0
    assert tb["t"].value == 0


def test_omega_witness_value_on_dihedral_family():
    """The witness family over {a, t} pins omega(A_n) >= n."""
    gnd = parse_subset(DINF, "{a, t}")
    inv = enumerate_atoms(gnd, max_len=8)
    atoms = {a.counts: a for a in inv.atoms}
    member = membership_function(gnd, 16)
    val = omega_witness_value(
        atoms[(4, 2)], [atoms[(2, 2)], atoms[(2, 2)]], member
    )
    assert val == 2


def test_tame_bounds_refuses_foreign_u():
    """tame_bounds rejects a sequence that is not one of the inventory's atoms."""
    gnd = whole(cyclic(3))
    inv = enumerate_atoms(gnd)
    with pytest.raises(ValueError):
        tame_bounds(parse_sequence(cyclic(3), "g", over=gnd), inv, 4)


# -- structural probes ----------------------------------------------------------------


def test_seminormality_witness_frozen():
    """{a^2, a^6, t} yields the counterexample T = a^2 a^6 t^[2]."""
    res = seminormality_probe(parse_subset(DINF, "{a^2, a^6, t}"), 10)
    assert res.found
    assert res.witness.counts == (1, 1, 2)
    assert res.powers == (2, 3)


def test_root_closure_holds_on_mixed_signs():
    """{a, a^-1, t} shows no root-closure counterexample up to size 10."""
    res = root_closure_probe(parse_subset(DINF, "{a, a^-1, t}"), 10)
    assert not res.found


def test_probes_trivial_on_whole_finite_group():
    """A whole finite abelian group passes both probes at a small bound."""
    gnd = whole(cyclic(4))
    assert not seminormality_probe(gnd, 6).found
    assert not root_closure_probe(gnd, 6).found


def test_localization_membership_witness():
    """S = a^6 a^10 (a^-15)^[1] t^[2] sits in the localization at each prime."""
    gnd = parse_subset(DINF, "{a^6, a^10, a^-15, t}")
    s = parse_sequence(DINF, "a^6, a^10, a^-15, t^[2]", over=gnd)
    held, witness = in_localization(s, Element("rot", 6), 8)
    if held:
        assert witness is not None
        assert witness.v(Element("rot", 6)) == 0


def test_localization_gap_tracks_weak_krullness():
    """The gap search finds a separator iff the subset is not weakly Krull."""
    good = parse_subset(DINF, "{a^6, a^10, a^-15, t}")
    bad = parse_subset(DINF, "{a^2, a^3, a^-5, t}")
    assert localization_gap_search(good, 6, 8) is None
    hit = localization_gap_search(bad, 6, 8)
    assert hit is not None
    assert len(hit["witnesses"]) == len(bad)


def test_condensed_subset_of_mixed_ground():
    """Every element of {a, a^-1, t} appears in some product-one sequence."""
    out = condensed_subset(parse_subset(DINF, "{a, a^-1, t}"), bound=6)
    assert len(out["elements"]) == 3


def test_condensed_subset_drops_unreachable():
    """Same-sign rotations appear in no product-one sequence at all."""
    out = condensed_subset(parse_subset(DINF, "{a, a^2}"), bound=6)
    assert out["elements"] == ()
    full = condensed_subset(parse_subset(DINF, "{a, t}"), bound=5)
    assert len(full["elements"]) == 2


def test_finitary_witness_on_reflections():
    """Finitely many atoms cover every scanned product-one sequence."""
    out = finitary_witness(parse_subset(DINF, "{a*t, a^3*t}"), 2, 8)
    assert out["complete_cover"]
    assert len(out["covering_atoms"]) <= 2


def test_products_in_derived_subgroup():
    """pi(S) lands in the derived subgroup iff the reflection count is even."""
    assert products_in_derived_subgroup(parse_sequence(DINF, "a^[2], t^[2]"))
    assert not products_in_derived_subgroup(parse_sequence(DINF, "a, t"))
