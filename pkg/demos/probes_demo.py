"""Structural probes: seminormality, root closure, and localization gaps.

Each probe searches a bounded box for a counterexample and returns either a
concrete witness or the searched bound, so a negative answer is still a
quantified statement.
"""

from prodone.analysis import (
    localization_gap_search,
    root_closure_probe,
    seminormality_probe,
)
from prodone.groups import infinite_dihedral
from prodone.sequences import parse_subset

dinf = infinite_dihedral()

gnd = parse_subset(dinf, "{a^2, a^6, t}")
res = seminormality_probe(gnd, 10)
print(f"seminormality over {gnd.text()}: counterexample found = {res.found}")
if res.found:
    print(f"  T = {res.witness.text()}: T^2 and T^3 are products of the monoid"
          f" but T itself is not product-one")

gnd = parse_subset(dinf, "{a, a^-1, t}")
res = root_closure_probe(gnd, 10)
print(f"root closure over {gnd.text()}: counterexample found = {res.found}"
      f" (checked {res.checked} candidates up to size {res.bound})")

print()
good = parse_subset(dinf, "{a^6, a^10, a^-15, t}")
bad = parse_subset(dinf, "{a^2, a^3, a^-5, t}")
print(f"localization gap over {good.text()}: {localization_gap_search(good, 6, 8)}")
hit = localization_gap_search(bad, 6, 8)
print(f"localization gap over {bad.text()}:")
print(f"  S = {hit['sequence'].text()} avoids the monoid but lies in the")
print(f"  localization at every support prime -- the subset is not weakly Krull")
