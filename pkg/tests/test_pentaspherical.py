from fractions import Fraction

import pytest

from confsuper import catalog, pentaspherical as ps
from confsuper.algebra import I, PoleError
from confsuper.phase_space import poisson_bracket

FR = ps.frame()
DICT = {name: (flat, pent) for name, flat, pent in ps.killing_dictionary()}


def test_frame_constraints():
    assert str(FR.C1) == "(x1^2 + x2^2 + x3^2 + x4^2 + x5^2)"
    assert FR.w == FR.x(4) + I * FR.x(5)
    assert FR.q == FR.p(4) + I * FR.p(5)


def test_normal_form_kills_the_constraints():
    assert ps.normal_form(FR.C1).is_zero
    assert ps.normal_form(FR.C2).is_zero
    assert ps.vanishes_on_constraints(FR.C1 * FR.p(2) + FR.C2 * FR.x(3))
    assert not ps.vanishes_on_constraints(FR.p(1))
    # the C1 reduction alone leaves C2 standing
    assert not ps.normal_form(FR.C2, use_c2=False).is_zero


def test_hamiltonian_lift_with_explicit_multipliers():
    residual, m1, m2 = ps.lifted_hamiltonian_identity()
    assert residual == m1 * FR.C1 + m2 * FR.C2
    assert m1 == FR.q * FR.q and m2 == -2 * FR.q * FR.w


def test_lift_examples():
    assert DICT["rotation_xy"][1] == ps.rotation(1, 2)
    assert DICT["dilation"][1] == I * ps.rotation(4, 5)
    px = ps.rotation(1, 4) + I * ps.rotation(1, 5)
    kx = ps.rotation(1, 4) - I * ps.rotation(1, 5)
    assert DICT["translation_x"][1] == px
    assert DICT["special_x"][1] == kx


def test_dictionary_is_exact_on_the_constraints():
    residuals = ps.dictionary_residuals()
    assert len(residuals) == 10
    assert all(r.is_zero for r in residuals.values())


def test_rotation_algebra():
    assert ps.rotation_bracket_defect(1, 2, 3).is_zero
    assert poisson_bracket(ps.rotation(1, 2), ps.rotation(2, 3)) == ps.rotation(3, 1)
    defects = ps.so5_closure_defects()
    assert len(defects) == 60
    assert all(d.is_zero for d in defects.values())


def test_inversion_reflection():
    for axis in "xyz":
        P = ps.lift(DICT[f"translation_{axis}"][0])
        K = ps.lift(DICT[f"special_{axis}"][0])
        R = ps.inversion_reflection(P)
        assert ps.inversion_reflection(R) == P
        assert ps.normal_form(R + K).is_zero
    rot = ps.rotation(1, 2)
    assert ps.inversion_reflection(rot) == rot


def test_one_form_identity_and_negative_control():
    assert all(r.is_zero for r in ps.one_form_residuals(True))
    assert any(not r.is_zero for r in ps.one_form_residuals(False))


def test_project_point():
    assert ps.project_point((1, 2, 3, 4, -I)) == (Fraction(-1, 5), Fraction(-2, 5), Fraction(-3, 5))
    # the frame (x1, x2, x3, 1/2, -i/2) has x4 + i x5 = 1, so projection negates
    assert ps.project_point((1, 2, 3, Fraction(1, 2), -I / 2)) == (-1, -2, -3)
    with pytest.raises(PoleError):
        ps.project_point((1, 2, 3, 1, I))


def test_projective_identities_and_round_trip():
    assert all(r.is_zero for r in ps.projective_identities())
    X, Y, Z = Fraction(1, 3), Fraction(-2, 7), 5
    x5 = (X * X + Y * Y + Z * Z + 1) * I
    pt = (2 * X, 2 * Y, 2 * Z, X * X + Y * Y + Z * Z - 1, x5)
    assert ps.project_point(pt) == (X, Y, Z)


def test_derivative_relations_differ_in_two_rows():
    derived, printed = ps.derivative_relations()
    assert derived["X"] == printed["X"]
    for v, k in (("Y", 1), ("Z", 2)):
        assert derived[v] != printed[v]
        # the 2T entry belongs in slot k, the printed rows put it in slot 0
        assert derived[v][0].is_zero and derived[v][k] == printed[v][0]
        assert printed[v][k].is_zero and derived[v][3:] == printed[v][3:]


def test_homogeneity():
    sp = catalog.flat3()
    x, y, z = (sp.var(n) for n in sp.positions)
    res = ps.homogeneity_residuals([x / y, 1 / x**2 + z, x * x + y * y + z * z])
    assert all(r.is_zero for r in res)


def test_coordinate_identities():
    ids = ps.coordinate_identities()
    for key in ("(i) sphere", "(ii) null cone", "(iii) quadric", "(iv) stereographic", "(v) conformal factor, corrected"):
        assert ids[key].is_zero, key
    assert str(ids["(i) sphere, printed sign"]) == "(-2*mu*nu*rho)/(a*b)"
    assert not ids["(v) conformal factor, printed"].is_zero


def test_parameter_collision_is_reported():
    assert ps.collision_check(2, 3) is not None
