import pytest

from confsuper import catalog
from confsuper.killing import (
    CKTensor,
    ConformalKillingVector,
    DegreeBoundViolation,
    ck_vector_basis,
    ck_vector_in_span,
    is_ck_tensor,
    reduced_variables,
    symmetric_product,
    verify_ck_tensor,
)

SP = catalog.flat3()
BASIS = ck_vector_basis(SP)
NAMED = {v.name: v for v in BASIS}
x, y, z = (SP.var(n) for n in SP.positions)


def comps(v):
    return tuple(str(c) for c in v.components)


def test_basis_has_ten_generators():
    assert len(BASIS) == 10
    assert comps(NAMED["p_x"]) == ("1", "0", "0")
    assert comps(NAMED["dilation"]) == ("x", "y", "z")
    assert comps(NAMED["special_x"]) == ("x^2 - y^2 - z^2", "2*x*y", "2*x*z")


def test_basis_is_independent():
    for k, v in enumerate(BASIS):
        assert not ck_vector_in_span(v, BASIS[:k] + BASIS[k + 1:])
    assert ck_vector_in_span(NAMED["p_x"], BASIS)


def test_vector_component_count_is_checked():
    with pytest.raises(ValueError):
        ConformalKillingVector(SP, NAMED["p_x"].components[:2])


def test_translation_square():
    t = symmetric_product(NAMED["p_x"], NAMED["p_x"])
    assert t[0, 0] == 1 and t[1, 1] == 0 and t[0, 1] == 0
    assert all(b.is_zero for b in t.b)


def test_dilation_square():
    t = symmetric_product(NAMED["dilation"], NAMED["dilation"])
    X = (x, y, z)
    assert all(t[i, j] == X[i] * X[j] for i in range(3) for j in range(3))
    assert t.b == (4 * x, 4 * y, 4 * z)


def test_rotation_square_is_a_killing_tensor():
    t = symmetric_product(NAMED["rot_yx"], NAMED["rot_yx"])
    assert all(b.is_zero for b in t.b)


def test_all_products_are_conformal_killing_tensors():
    assert all(is_ck_tensor(symmetric_product(u, v)) for u in BASIS for v in BASIS)


def test_cyclic_equation_violation():
    bad = CKTensor(SP, [[0, z**3, 0], [z**3, 0, 0], [0, 0, 0]])
    assert verify_ck_tensor(bad) == ["cyclic sum = 3*z^2"]
    assert verify_ck_tensor(CKTensor(SP, [[0] * 3] * 3)) == []


def test_tensor_must_be_symmetric():
    with pytest.raises(ValueError):
        CKTensor(SP, [[0, x, 0], [y, 0, 0], [0, 0, 0]])


def test_reduced_variables():
    t = symmetric_product(NAMED["p_x"], NAMED["p_x"])
    assert reduced_variables(t) == (-1, -1, 0, 0, 0)
    s = symmetric_product(NAMED["special_y"], NAMED["special_y"])
    degrees = [f.as_polynomial().total_degree() for f in reduced_variables(s)]
    assert max(degrees) == 4
    g = x * y + 1
    trace = CKTensor(SP, [[g, 0, 0], [0, g, 0], [0, 0, g]])
    assert all(f.is_zero for f in reduced_variables(trace))


def test_degree_bound_is_enforced():
    t = CKTensor(SP, [[1 / x, 0, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(DegreeBoundViolation):
        reduced_variables(t)
    assert len(reduced_variables(t, strict=False)) == 5


def test_shift_by_hamiltonian_and_round_trip():
    t = symmetric_product(NAMED["p_x"], NAMED["special_z"])
    assert CKTensor.from_phase_function(t.to_phase_function()) == t
    assert t.shifted(x)[1, 1] == t[1, 1] + x
    assert reduced_variables(t.shifted(x)) == reduced_variables(t)
