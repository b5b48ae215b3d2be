"""Sets of lengths and the classical factorization invariants.

A product-one sequence can factor into atoms in several ways; the set of
lengths L(S) records how many atoms each factorization uses.  Scanning every
sequence up to a size bound yields the gap set, the elasticity, the catenary
degree, and the union invariants U_k.
"""

from prodone.analysis import factorizations, length_invariants, set_of_lengths
from prodone.groups import cyclic, finite_dihedral, infinite_dihedral
from prodone.sequences import ground, parse_sequence, parse_subset

s = parse_sequence(cyclic(3), "g^[3], g^2^[3]")
print(f"factorizations of {s.text()} over cyclic(3):")
for z in factorizations(s).to_json()["factorizations"]:
    print(f"  {' | '.join(z)}")
print(f"so L(S) = {list(set_of_lengths(s))}")

print()
dinf = infinite_dihedral()
gnd = parse_subset(dinf, "{a, a^-1, t}")
s = parse_sequence(dinf, "t^[4], a^[2], a^-1^[2]", over=gnd)
print(f"over {gnd.text()}, L({s.text()}) = {list(set_of_lengths(s))}")
print("distinct lengths in one set of lengths: the monoid is not half-factorial")

print()
s3 = finite_dihedral(3)
rep = length_invariants(ground(s3, s3.elements()), 10, 4)
print(f"invariants over the whole {s3.label} (sequences of size <= 10):")
print(f"  gap set      {list(rep.delta)}")
print(f"  elasticity   {rep.elasticity}")
print(f"  catenary     {rep.catenary}")
for k, vals in sorted(rep.u_k.items()):
    print(f"  U_{k}          {list(vals)}")
