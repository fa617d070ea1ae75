import dataclasses
from fractions import Fraction

import pytest

from confsuper import bd_canonical as bd, catalog, integrability as it, reference_forms as rf
from confsuper.killing import CKTensor, ck_vector_basis, symmetric_product

SP = catalog.flat3()
x, y, z = (SP.var(n) for n in SP.positions)
r2 = x * x + y * y + z * z
ZERO = bd.CanonicalCoefficients.from_mapping({k: SP.registry.const(0) for k in bd._COEFF_NAMES})


@pytest.fixture(scope="module")
def printed():
    return bd.CanonicalCoefficients.from_mapping(catalog.printed_canonical_coefficients())


@pytest.fixture(scope="module")
def ten(printed):
    return it.TenTuple.from_coefficients(printed)


@pytest.fixture(scope="module")
def oscillator_tuple():
    sol = bd.fit_canonical(bd.PotentialFamily(SP, catalog.flat_oscillator_basis(SP)))
    assert sol.classification == "nondegenerate"
    return it.TenTuple.from_coefficients(sol.coefficients)


def skeleton(M):
    return [[str(e) for e in row] for row in M]


def test_zero_coefficients_give_the_shift_skeleton():
    A1, A2, A3 = it.build_matrices(ZERO).matrices
    assert skeleton(A1)[0] == ["0", "1", "0", "0", "0"] and skeleton(A1)[1][4] == "1"
    assert skeleton(A2)[0] == ["0", "0", "1", "0", "0"] and skeleton(A2)[2][4] == "1"
    assert skeleton(A3)[0] == ["0", "0", "0", "1", "0"] and skeleton(A3)[3][4] == "1"
    assert sum(e != "0" for M in (A1, A2, A3) for row in skeleton(M) for e in row) == 6
    assert it.obstructions_vanish(it.build_matrices(ZERO))


def test_derived_fifth_row_entries(printed):
    c = printed
    d = it.derived_entries(c, SP.positions)
    assert d["A24"] == c.A12.diff("x") + c.B12 * c.A12 + c.C12 * c.A13 + c.D12
    assert d["D24"] == c.B12 * c.D12 + c.C12 * c.D13 + c.D12.diff("x")
    m = it.build_matrices(c)
    assert m.matrices[1][4][1] == d["A24"]


def test_obstructions_vanish_for_the_table(printed):
    assert it.obstructions_vanish(it.build_matrices(printed))


def test_perturbed_table_is_not_integrable(printed):
    assert not it.obstructions_vanish(it.build_matrices(dataclasses.replace(printed, A12=printed.A12 + 1)))


def test_ten_tuple_relations(printed, ten):
    for name in ("B13", "C12", "C13", "C22", "C23"):
        assert ten[name] == getattr(printed, name)
    with pytest.raises(it.Int11Violation):
        it.TenTuple.from_coefficients(dataclasses.replace(printed, C22=printed.C22 + x))
    with pytest.raises(ValueError):
        it.TenTuple({"A12": x})


def test_d_closure_on_zero_and_table(printed, ten):
    assert all(v.is_zero for v in it.d_closure(it.TenTuple.from_coefficients(ZERO)).values())
    D = it.d_closure(ten)
    assert D["D12"] == 24 * x * y / (1 - r2**2)
    assert all(D[k] == getattr(printed, k) for k in D)


def test_d_closure_of_flat_system_vanishes(oscillator_tuple):
    assert all(v.is_zero for v in it.d_closure(oscillator_tuple).values())


def test_flat_ideal(oscillator_tuple, ten):
    assert all(v.is_zero for v in it.flat_ideal(it.TenTuple.from_coefficients(ZERO)).values())
    assert all(v.is_zero for v in it.flat_ideal(oscillator_tuple).values())
    assert it.is_flat(oscillator_tuple)
    values = {k: v.evaluate({"x": 1, "y": 2, "z": 3}) for k, v in it.flat_ideal(ten).items()}
    assert values["e"] == Fraction(24, 65)
    assert not it.is_flat(ten)


def test_sphere_d_terms(printed, ten):
    zero = SP.registry.const(0)
    assert all(v.is_zero for v in it.sphere_d_terms(it.TenTuple.from_coefficients(ZERO), (zero,) * 3).values())
    G = it.log_gradient(catalog.sphere_metric_factor(SP), SP.positions)
    grad = it.sphere_d_terms(ten, G)
    assert all(grad[k] == getattr(printed, k) for k in grad)
    I = it.flat_ideal(ten)
    assert grad["D12"] == Fraction(-2, 3) * I["e"]


def test_sphere_d_ideal_column(ten):
    """The ideal column disagrees with the gradient column in D22 and D33; the corrected forms agree."""
    G = it.log_gradient(catalog.sphere_metric_factor(SP), SP.positions)
    grad = it.sphere_d_terms(ten, G)
    I = it.flat_ideal(ten)
    printed_col = rf.sphere_d_from_ideal(I)
    wrong = sorted(k for k in grad if printed_col[k] != grad[k])
    assert wrong == ["D22", "D33"]
    corrected = rf.sphere_d_from_ideal_corrected(I)
    assert all(corrected[k] == grad[k] for k in grad)
    assert corrected["D33"] == Fraction(-2, 3) * I["c"]


def test_derivative_closure_on_table(ten):
    res = it.derivative_closure(ten).residuals(ten)
    assert len(res) == 30
    assert all(v.is_zero for v in res.values())


def test_symmetry_closure_on_table(printed):
    for S in catalog.nondegenerate_symmetries().values():
        assert it.symmetry_closure_check(printed, CKTensor.from_phase_function(S)).ok


def test_symmetry_closure_rejects_non_symmetry(printed):
    named = {v.name: v for v in ck_vector_basis(SP)}
    t = symmetric_product(named["p_x"], named["special_y"])
    report = it.symmetry_closure_check(printed, t)
    assert not report.ok and report.violations


def test_sampled_common_zeros():
    pts = it.sample_ideal_zeros(20, seed=0)
    assert len(pts) == 20
    values = it.sixth_generator_values(pts)
    # I(f) is not in the ideal generated by I(a..e) alone
    assert all(v != 0 for v in values)
    closed = it.sample_ideal_zeros(20, seed=0, closed=True)
    assert all(v == 0 for v in it.sixth_generator_values(closed))


def test_sampling_is_seeded():
    assert it.sample_ideal_zeros(3, seed=4) == it.sample_ideal_zeros(3, seed=4)
    assert it.sample_ideal_zeros(3, seed=4) != it.sample_ideal_zeros(3, seed=5)


def test_printed_obstruction_fails_on_actual_symmetries(printed):
    """The tabulated algebraic obstruction carries B23 where B33 belongs; four of six symmetries expose it."""
    failing = []
    for k, S in sorted(catalog.nondegenerate_symmetries().items()):
        r = it.symmetry_closure_check(printed, CKTensor.from_phase_function(S))
        assert r.obstruction.is_zero
        if not r.printed_obstruction.is_zero:
            failing.append(k)
    assert failing == [(1, 3), (1, 4), (2, 4), (3, 4)]
