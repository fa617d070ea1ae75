"""Pentaspherical coordinates: the lift, the conformal dictionary and the projection."""

from fractions import Fraction

from confsuper import pentaspherical as ps
from confsuper.algebra import I

fr = ps.frame()
residual, m1, m2 = ps.lifted_hamiltonian_identity()
print("lifted Hamiltonian = m1*C1 + m2*C2:", residual == m1 * fr.C1 + m2 * fr.C2)
print("  m1 =", m1)
print("  m2 =", m2)

for name, flat, pent in ps.killing_dictionary():
    print(f"  {name:<14} -> {pent}")
print("dictionary exact on the constraints:", all(r.is_zero for r in ps.dictionary_residuals().values()))
print("so(5) closes:", all(d.is_zero for d in ps.so5_closure_defects().values()))

for pt, label in (((1, 2, 3, 4, -I), "(1, 2, 3, 4, -i)"), ((1, 2, 3, Fraction(1, 2), -I / 2), "(1, 2, 3, 1/2, -i/2)")):
    print(f"projection of {label}:", ", ".join(str(c) for c in ps.project_point(pt)))

for key, value in ps.coordinate_identities().items():
    print(f"  {key:<34} residual {value}")
