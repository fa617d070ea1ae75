import random

from confsuper import degenerate as dg
from confsuper.diffop import (
    DiffOperator,
    commutator,
    compose,
    gauge_conjugate,
    inversion_conjugate,
    is_conformal_symmetry_op,
    op_mod_H,
)

from properties import PLANE, operator, rational

SP = PLANE
x, y = SP.var("x"), SP.var("y")
dx, dy = DiffOperator.partial(SP, 0), DiffOperator.partial(SP, 1)
LAP = compose(dx, dx) + compose(dy, dy)
G3 = dg.generators(3)


def test_leibniz_composition():
    assert compose(dx, DiffOperator.multiplication(SP, x)) == x * dx + 1


def test_partials_commute():
    assert compose(dx, dy) == compose(dy, dx)
    assert commutator(dx, dx).is_zero


def test_apply_matches_derivative():
    assert dx.apply(x**2 * y) == 2 * x * y
    assert LAP.apply(x**3 + x * y**2) == 8 * x


def test_composition_is_associative_on_samples():
    rng = random.Random(7)
    for _ in range(20):
        A, B, C = operator(rng), operator(rng), operator(rng)
        assert compose(compose(A, B), C) == compose(A, compose(B, C))


def test_composition_applies_in_order():
    rng = random.Random(11)
    f = x**3 * y + y**2
    for _ in range(20):
        A, B = operator(rng), operator(rng)
        assert compose(A, B).apply(f) == A.apply(B.apply(f))


def test_dilation_scales_laplacian_system():
    assert commutator(G3.D, G3.H) == 2 * G3.H


def test_dilation_action():
    assert all(v.is_zero for v in dg.dilation_action(3).values())
    assert commutator(G3.D, G3.P[0]) == 2 * G3.P[0]
    assert commutator(G3.D, G3.K[1]) == -2 * G3.K[1]
    assert commutator(G3.D, G3.J[(1, 3)]).is_zero


def test_commuting_families():
    assert commutator(G3.P[0], G3.P[2]).is_zero
    assert commutator(G3.K[0], G3.K[1]).is_zero


def test_op_mod_h_trivial_cases():
    H = LAP + 1 / x**2
    R, rem = op_mod_H(H, H)
    assert R == 1 and rem.is_zero
    R, rem = op_mod_H(dy, H)
    assert R.is_zero and rem == dy


def test_op_mod_h_reconstruction():
    H = LAP + 1 / x**2
    rng = random.Random(3)
    for _ in range(15):
        X = compose(operator(rng, SP), operator(rng, SP))
        R, rem = op_mod_H(X, H)
        assert compose(R, H) + rem == X
        # no remainder term carries d_x^2
        assert all(alpha[0] < 2 for alpha in rem.terms)


def test_conformal_symmetry_operator():
    assert is_conformal_symmetry_op(DiffOperator.identity(SP), LAP).is_zero
    assert is_conformal_symmetry_op(G3.J[(1, 2)], G3.H).is_zero
    R = is_conformal_symmetry_op(G3.K[0], G3.H)
    assert R is not None and not R.is_zero and R.order() == 1
    assert is_conformal_symmetry_op(compose(dx, dy) * x, LAP) is None


def test_gauge_conjugate():
    assert gauge_conjugate(LAP, 1) == LAP
    assert gauge_conjugate(compose(dx, dx), x) == compose(dx, dx) + (2 / x) * dx


def test_gauge_conjugation_respects_commutators():
    rng = random.Random(5)
    for _ in range(10):
        A, B = operator(rng, PLANE), operator(rng, PLANE)
        f = 1 + rational(rng, PLANE.registry, PLANE.positions, gaussian=False) ** 2
        lhs = gauge_conjugate(commutator(A, B), f)
        rhs = commutator(gauge_conjugate(A, f), gauge_conjugate(B, f))
        assert lhs == rhs


def test_inversion_conjugation():
    assert inversion_conjugate(G3.J[(1, 2)]) == G3.J[(1, 2)]
    assert inversion_conjugate(G3.D) == -G3.D
    for j in range(3):
        assert inversion_conjugate(G3.P[j]) == G3.K[j]


def test_inversion_is_an_involution():
    S = G3.P[1] + G3.J[(2, 3)]
    assert inversion_conjugate(inversion_conjugate(S)) == S
