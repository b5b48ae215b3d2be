"""Product sets and product-one membership across the group families.

The set pi(S) collects every value an ordered product of the terms of S can
take.  Over abelian groups it is a single point; over the dihedral groups the
order of multiplication matters and pi(S) can be large.
"""

from prodone.groups import cyclic, infinite_dihedral, integers
from prodone.products import is_product_one, product_set
from prodone.sequences import parse_sequence


def show(group, text):
    s = parse_sequence(group, text)
    pi = product_set(s)
    print(f"  {text:28s} over {group.label:5s}"
          f" |pi(S)| = {len(pi):3d}   product-one: {is_product_one(s)}")


print("abelian groups collapse pi(S) to one point:")
show(cyclic(4), "g, g^2, g^3")
show(integers(), "3, -5, 2^[4]")

print("\nthe infinite dihedral group does not:")
dinf = infinite_dihedral()
show(dinf, "a, a^-1, t^[2]")
show(dinf, "a^2, a^6, t^[2]")
show(dinf, "a*t, a^3*t, a^2*t, t")

print("\na sequence with an odd number of reflections can never reach 1:")
show(dinf, "t^[3]")
