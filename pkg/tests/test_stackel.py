from fractions import Fraction

import pytest

from confsuper import bd_canonical as bd, catalog, stackel as st
from confsuper.killing import CKTensor
from confsuper.phase_space import build_degenerate_system, poisson_bracket

SYS = build_degenerate_system(3)
SP = SYS.space
x1, x2, x3 = (SP.var(n) for n in SP.positions)
GENERATORS = list(SYS.P) + list(SYS.J.values()) + list(SYS.K) + [SYS.D]


def test_unit_special_potential_is_the_identity():
    rec = st.stackel_transform(SYS.hamiltonian, 1, check_admissible=False)
    assert rec.metric_factor == 1 and rec.potential == SYS.hamiltonian.potential
    assert st.transform_symmetry(SYS.J[(1, 2)], rec) == SYS.J[(1, 2)]


def test_inverse_square_special_potential():
    rec = st.stackel_transform(SYS.hamiltonian, 1 / x3**2)
    assert rec.metric_factor == 1 / x3**2
    assert rec.potential == SYS.hamiltonian.potential * x3**2


def test_every_transformed_degenerate_symmetry_is_a_true_symmetry():
    rec = st.stackel_transform(SYS.hamiltonian, 1 / x3**2)
    Ht = rec.target.function
    for S in GENERATORS:
        assert poisson_bracket(st.transform_symmetry(S, rec), Ht).is_zero


def test_hamiltonian_maps_to_a_multiple_of_the_target():
    rec = st.stackel_transform(SYS.hamiltonian, 1 / x3**2)
    St = st.transform_symmetry(SYS.hamiltonian.function, rec)
    # W is normalised to vanish at the anchor (3, 5, 7), so S~ = U(anchor) H~
    assert St == Fraction(1, 49) * rec.target.function


def test_integrate_w_examples():
    t = CKTensor(SP, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    W = st.integrate_W(t, 1 / x1**2)
    assert W.diff("x1") == (1 / x1**2).diff("x1")
    assert W == 1 / x1**2 - Fraction(1, 9)
    assert st.integrate_W(t, 1).is_zero
    J12 = CKTensor.from_phase_function(SYS.J[(1, 2)].homogeneous_part(2))
    W = st.integrate_W(J12, 1 / x3**2)
    grad = st.w_gradient(J12, 1 / x3**2)
    assert all(W.diff(n) == g for n, g in zip(SP.positions, grad))


def test_antiderivative_errors():
    zero = SP.registry.const(0)
    with pytest.raises(st.NonClosedGradient):
        st.antiderivative([x2, -x1, zero], SP.positions)
    with pytest.raises(st.LogarithmicObstruction):
        st.antiderivative([1 / x1, zero, zero], SP.positions)
    W = st.antiderivative([2 * x1 * x2, x1**2, zero], SP.positions, anchor={"x1": 0, "x2": 0, "x3": 0})
    assert W == x1**2 * x2


def test_inadmissible_special_potentials():
    with pytest.raises(st.InadmissiblePotential):
        st.stackel_transform(SYS.hamiltonian, x1 * x2)
    with pytest.raises(st.InadmissiblePotential):
        st.stackel_transform(SYS.hamiltonian, 0)
    with pytest.raises(st.InadmissiblePotential):
        st.stackel_transform(SYS.hamiltonian, SP.var("a1"), check_admissible=False)


def test_potential_space_of_degenerate_system():
    assert st.potential_space(SYS.hamiltonian) == [1 / x1**2, 1 / x2**2, 1 / x3**2]
    assert st.is_admissible(SYS.hamiltonian, 3 / x1**2 - 1 / x2**2)


def test_nondegenerate_sphere_transform():
    H = catalog.nondegenerate_hamiltonian()
    rec = st.stackel_transform(H, catalog.sphere_metric_factor())
    Ht = rec.target.function
    for k, S in sorted(catalog.nondegenerate_symmetries().items()):
        assert poisson_bracket(st.transform_symmetry(S, rec, name=str(k)), Ht).is_zero
    assert len(rec.W) == 6


def test_transform_rejects_non_symmetry():
    rec = st.stackel_transform(SYS.hamiltonian, 1 / x3**2)
    with pytest.raises(ValueError):
        st.transform_symmetry(SP.momentum(0) * SP.momentum(1) * x3, rec)


@pytest.fixture(scope="module")
def printed():
    return bd.CanonicalCoefficients.from_mapping(catalog.printed_canonical_coefficients())


def test_coefficient_transform_with_unit_factor(printed):
    t = st.canonical_coefficients_transform(printed, 1)
    assert all(t.as_dict()[k] == v for k, v in printed.as_dict().items())


def test_transformed_coefficients_on_the_sphere(printed):
    sp = catalog.flat3()
    lam = catalog.sphere_metric_factor(sp)
    ct = st.canonical_coefficients_transform(printed, lam)
    assert all(getattr(ct, k).is_zero for k in ("D12", "D13", "D22", "D23", "D33"))
    for V in catalog.nondegenerate_basis(sp):
        assert all(r.is_zero for r in bd.canonical_residuals(ct, V / lam, sp.positions).values())
    family = bd.PotentialFamily(sp, tuple(V / lam for V in catalog.nondegenerate_basis(sp)))
    sol = bd.fit_canonical(family, check_integrability=False)
    assert all(v == getattr(ct, k) for k, v in sol.coefficients.as_dict().items())


def test_coefficient_transform_for_a_non_solution(printed):
    """With a factor that solves nothing the D terms survive; the fit on V/x is the arbiter."""
    sp = catalog.flat3()
    x = sp.var("x")
    ct = st.canonical_coefficients_transform(printed, x)
    assert not ct.D12.is_zero
    family = bd.PotentialFamily(sp, tuple(V / x for V in catalog.nondegenerate_basis(sp)))
    sol = bd.fit_canonical(family, check_integrability=False)
    assert all(v == getattr(ct, k) for k, v in sol.coefficients.as_dict().items())


def test_first_order_symmetry_maps_to_itself():
    """The dilation is first order with {D,H} = -2H; it is untouched and commutes with H~."""
    rec = st.stackel_transform(SYS.hamiltonian, 1 / x3**2)
    assert st.transform_symmetry(SYS.D, rec) == SYS.D
    assert poisson_bracket(SYS.D, rec.target.function).is_zero
    assert not poisson_bracket(SYS.D, SYS.hamiltonian.function).is_zero
