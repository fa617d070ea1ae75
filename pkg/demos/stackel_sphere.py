"""Stackel-transform the degenerate system and the nondegenerate one.

Each conformal symmetry S becomes S - (W/U) H, which Poisson-commutes with the
transformed Hamiltonian exactly.
"""

from confsuper import catalog, stackel as st
from confsuper.phase_space import build_degenerate_system, poisson_bracket

sys3 = build_degenerate_system(3)
x3 = sys3.space.var("x3")
rec = st.stackel_transform(sys3.hamiltonian, 1 / x3**2)
print("degenerate system, U = 1/x3^2")
print("  metric factor:", rec.metric_factor)
for (j, k), J in sys3.J.items():
    St = st.transform_symmetry(J, rec)
    print(f"  J{j}{k}: bracket with H~ is zero: {poisson_bracket(St, rec.target.function).is_zero}")

H = catalog.nondegenerate_hamiltonian()
rec = st.stackel_transform(H, catalog.sphere_metric_factor())
print("nondegenerate system, sphere factor", rec.metric_factor)
for key, S in sorted(catalog.nondegenerate_symmetries().items()):
    St = st.transform_symmetry(S, rec, name=str(key))
    print(f"  J{key[0]}{key[1]}: commutes: {poisson_bracket(St, rec.target.function).is_zero}")
