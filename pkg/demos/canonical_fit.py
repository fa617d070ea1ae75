"""Fit the canonical second-derivative equations for the nondegenerate potential.

The five basis potentials determine the twenty coefficients; integrability of
the resulting system and the closure quadratics are then checked exactly.
"""

import dataclasses

from confsuper import bd_canonical as bd, catalog, integrability as it

sp = catalog.flat3()
sol = bd.fit_canonical(bd.PotentialFamily(sp, catalog.nondegenerate_basis(sp)))
print("classification:", sol.classification)
for name, value in sol.coefficients.as_dict().items():
    print(f"  {name} = {value}")

mats = it.build_matrices(sol.coefficients)
print("integrability obstructions vanish:", it.obstructions_vanish(mats))
bent = dataclasses.replace(sol.coefficients, A12=sol.coefficients.A12 + 1)
print("after perturbing A12:", it.obstructions_vanish(it.build_matrices(bent)))

ten = it.TenTuple.from_coefficients(sol.coefficients)
D = it.d_closure(ten)
print("D terms from the ten functions agree with the fit:",
      all(D[k] == getattr(sol.coefficients, k) for k in D))
print("flat:", it.is_flat(ten))
