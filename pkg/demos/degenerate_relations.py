"""Walk through the operator relations of the inverse-square Laplace system.

Run with ``python3 demos/degenerate_relations.py``.
"""

from confsuper import degenerate as dg

for n in (2, 3):
    mult = dg.symmetry_multipliers(n)
    print(f"n={n}: {len(mult)} generators, all conformal: {all(R is not None for R in mult.values())}")
    for rel in dg.linear_identities(n):
        print(f"  {rel.name:<34} holds={rel.holds}")
    print(f"  constant that closes the Casimir identity: {dg.casimir_constant(n)}")

print()
print("n=2 relations")
for rel in dg.n2_relations():
    print(f"  {rel.name:<34} holds={rel.holds}")
rel = dg.p1k1_derived()
print(f"  {rel.name:<34} holds={rel.holds}")

four = dg.fourth_order_relation()
print(f"  fourth-order relation holds={four.relation.holds}, displayed R matches={four.printed_R_matches}")
print(f"  R from the division: {four.relation.R}")
