from fractions import Fraction

import pytest

from confsuper import closure, reference_forms as rf

sym = closure.sym


@pytest.fixture(scope="module")
def derived():
    return closure.derive_closure()


def test_derivation_is_consistent_with_full_rank(derived):
    assert derived.consistent
    assert derived.rank == 35
    assert len(derived.dF) == 30 and set(derived.D) == set(closure.D_NAMES)


def test_mixed_partials_vanish_identically(derived):
    defects = closure.mixed_partial_defects(derived)
    assert len(defects) == 30
    assert all(p.is_zero for p in defects.values())


def test_printed_z_derivative_of_a12(derived):
    third = Fraction(1, 3)
    expected = (third * sym("A23") * sym("A33") + 2 * third * sym("B12") * sym("A23")
                + third * sym("A13") * sym("A12") - third * sym("A23") * sym("A22"))
    assert derived.dF[("A12", 3)] == expected


def test_all_three_a12_derivatives_match(derived):
    printed = rf.a12_derivatives(sym)
    for k in range(3):
        assert closure.apply_int11(derived.dF[("A12", k + 1)] - printed[k]).is_zero


def test_d_quadratics_match(derived):
    printed = rf.d_quadratics(sym)
    assert all((derived.D[k] - printed[k]).is_zero for k in printed)
    third = Fraction(2, 3)
    assert derived.D["D12"] == third * (-sym("A12") * sym("B12") - sym("A22") * sym("B33") + sym("A23") * sym("B23")
                                        - sym("A23") * sym("C33") + sym("A33") * sym("B33"))


def test_tabulated_symmetry_equations(derived):
    defects = closure.tabulated_symmetry_defects()
    assert len(defects) == 15
    assert all(p.is_zero for p in defects.values())


def test_printed_algebraic_obstruction_leaves_a_term():
    assert str(closure.obstruction_after_relations(False)) == "-B23*u13 + B33*u13"
    assert closure.obstruction_after_relations(True).is_zero


def test_derived_obstruction_is_the_corrected_form():
    C = closure.coefficient_accessor(False)
    total = closure.derived_obstruction() + rf.algebraic_obstruction_corrected(C, closure.a_val)
    assert total.is_zero


def test_second_order_obstructions_hold(derived):
    defects = closure.second_order_defects()
    assert set(defects) == {"2a12_11", "2a13_11", "2a23_22"}
    assert all(p.is_zero for p in defects.values())


def test_relations_solve_the_dependent_symbols():
    bind = closure.int11_bindings()
    assert set(bind) == set(closure.DEPENDENT)
    assert bind["C13"] == sym("B12") - sym("A22") + sym("A33")
    assert closure.apply_int11(sym("C23")) == sym("A12") + sym("B33")


def test_total_derivative_uses_the_closure(derived):
    assert closure.total_derivative(sym("A12"), 3) == derived.dF[("A12", 3)]
    f = sym("A12") * sym("B22")
    lhs = closure.total_derivative(f, 1)
    rhs = derived.dF[("A12", 1)] * sym("B22") + sym("A12") * derived.dF[("B22", 1)]
    assert lhs == rhs


def test_flat_ideal_symbolic_generators():
    I = closure.flat_ideal_symbolic()
    assert set(I) == set("abcdef")
    assert all(I[k].total_degree() == 2 for k in I)
    conds = closure.flat_derivative_conditions()
    assert len(conds) == 15
