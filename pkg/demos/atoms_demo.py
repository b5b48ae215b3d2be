"""Atom inventories and Davenport constants, with their certificates.

An atom is a nonempty product-one sequence with no proper product-one
subsequence.  The Davenport constant is the largest atom length; over some
dihedral subsets it is infinite, and the engine returns a witness family
instead of a number.
"""

from prodone.analysis import davenport, enumerate_atoms
from prodone.groups import cyclic, elementary_two, infinite_dihedral
from prodone.sequences import ground, parse_subset


def show_atoms(gnd, max_len=None):
    inv = enumerate_atoms(gnd, max_len=max_len)
    cert = inv.certificate.to_json()
    print(f"  atoms over {gnd.text()}  [{cert['kind']}]")
    for a in inv.atoms:
        print(f"    {a.text()}")


c3 = cyclic(3)
show_atoms(ground(c3, c3.elements()))

print()
show_atoms(parse_subset(infinite_dihedral(), "{a*t, a^2*t, a^4*t}"))

print()
print("one rotation with one reflection generates atoms of every even length,")
print("so the listing needs a bound:")
show_atoms(parse_subset(infinite_dihedral(), "{a, t}"), max_len=10)

print()
print("Davenport constants:")
for r in (1, 2, 3, 4):
    grp = elementary_two(r)
    res = davenport(ground(grp, grp.elements()))
    print(f"  D over the whole {grp.label}: {res.value.value}")

res = davenport(parse_subset(infinite_dihedral(), "{a, t}"))
print(f"  D over {{a, t}}: {res.status} -- witness family {res.witness.description}")
