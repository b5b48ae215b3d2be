"""Closed-form classifiers for finite subsets of the infinite dihedral group.

Membership, atom inventories, weak Krullness, and tameness over subsets of
D-infinity all admit exact answers without search; the engine cross-checks
them against brute force in its verification suites.
"""

from prodone import dihedral as dih
from prodone.groups import infinite_dihedral
from prodone.sequences import parse_sequence, parse_subset

dinf = infinite_dihedral()

s = parse_sequence(dinf, "a^3, a^-1, a^4*t, t")
print(f"is {s.text()} product-one?  {dih.is_product_one(s)}")
split = dih.decompose(s)
print(f"witness split: t1={split.t1.text() or '-'}  t2={split.t2.text() or '-'}"
      f"  w1={split.w1.text()}  w2={split.w2.text()}")

print()
print("structural classification of landmark subsets:")
for text in ("{a, a^-1, t}", "{a*t, a^3*t}", "{a^6, a^10, a^-15, t}",
             "{a^2, a^3, a^-5, t}"):
    out = dih.classify(parse_subset(dinf, text))
    flags = ", ".join(
        name for name in ("finitely_generated", "tame", "locally_tame", "weakly_krull")
        if out[name]
    )
    print(f"  {text:24s} -> {flags or 'none of the four properties'}")

print()
ok, cert = dih.weakly_krull(parse_subset(dinf, "{a^6, a^10, a^-15, t}"))
print(f"the coprime-cofactor certificate behind {{a^6, a^10, a^-15, t}}:")
print(f"  cofactors {cert['cofactors']['cofactors']} -- weakly Krull: {ok}")

print()
exists, witness = dih.relation_witness(2, 3, 5)
print(f"relation witness for (2, 3, 5): {witness}"
      f"  (2*{witness[0]} + 3*{witness[1]} = 5*{witness[2]})")
