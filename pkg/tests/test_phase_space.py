import pytest

from confsuper.phase_space import (
    ClassicalHamiltonian,
    PhaseFunction,
    PhaseSpace,
    build_degenerate_system,
    divide_by_hamiltonian,
    involution_check,
    is_conformal_symmetry,
    poisson_bracket,
    reduce_mod_hamiltonian,
)

SYS3 = build_degenerate_system(3)
SP = SYS3.space
H = SYS3.hamiltonian
HF = H.function
x1, x2, x3 = (SP.var(n) for n in SP.positions)
a1, a2, a3 = (SP.var(n) for n in SP.registry.parameters)
p1, p2, p3 = (SP.momentum(i) for i in range(3))


def test_canonical_pair():
    assert poisson_bracket(SP.function(x1), p1) == 1
    assert poisson_bracket(p1, SP.function(x1)) == -1
    assert poisson_bracket(SP.function(x1), p2).is_zero


def test_bracket_antisymmetry():
    assert poisson_bracket(HF, HF).is_zero


def test_dilation_scales_hamiltonian():
    # D = -(x1 p1 + x2 p2 + x3 p3)
    assert poisson_bracket(SYS3.D, HF) == -2 * HF


def test_generator_counts():
    assert (len(SYS3.P), len(SYS3.J), len(SYS3.K)) == (3, 3, 3)


def test_true_symmetry_has_zero_multiplier():
    b = is_conformal_symmetry(SYS3.J[(1, 2)], H)
    assert b is not None and b.is_zero


def test_special_conformal_multiplier_is_linear_in_momenta():
    b = is_conformal_symmetry(SYS3.K[0], H)
    assert b.degree() == 1
    r2 = x1**2 + x2**2 + x3**2
    assert b == 8 * x1 * (x1**2 - x2**2 - x3**2) * p1 + 16 * x1**2 * (x2 * p2 + x3 * p3)
    assert b.coefficient((1, 0, 0)) == 8 * x1 * (2 * x1**2 - r2)


def test_multiples_of_h_are_conformal():
    assert is_conformal_symmetry(HF * x1, H) == 2 * p1


def test_non_symmetry_is_rejected():
    assert is_conformal_symmetry(p1 * p2 * x3, H) is None


def test_every_degenerate_generator_is_conformal():
    gens = list(SYS3.P) + list(SYS3.J.values()) + list(SYS3.K) + [SYS3.D]
    assert all(is_conformal_symmetry(S, H) is not None for S in gens)


def test_reduce_mod_hamiltonian():
    assert reduce_mod_hamiltonian(HF, H).is_zero
    r = reduce_mod_hamiltonian(SYS3.P[0], H)
    assert r == -(p2 * p2) - p3 * p3 - a2 / x2**2 - a3 / x3**2
    assert reduce_mod_hamiltonian(r, H) == r


def test_divide_by_hamiltonian_reconstructs():
    F = SYS3.K[1] * SYS3.P[0]
    q, r = divide_by_hamiltonian(F, H)
    assert q * HF + r == F


def test_involutions():
    assert poisson_bracket(SYS3.P[0], SYS3.P[1]).is_zero
    assert involution_check(SYS3.K[0], SYS3.K[1], H)
    assert not involution_check(SYS3.P[0], SYS3.K[0], H)


def test_classical_casimir_relation():
    """Sum of J's plus D^2 plus the sum of parameters is r^2 H; no constant term classically."""
    total = sum(SYS3.J.values(), PhaseFunction.zero(SP)) + SYS3.D * SYS3.D + (a1 + a2 + a3)
    assert total == (x1**2 + x2**2 + x3**2) * HF


def test_two_dimensional_identities():
    s2 = build_degenerate_system(2)
    H2 = s2.hamiltonian.function
    y1, y2 = (s2.space.var(n) for n in s2.space.positions)
    assert s2.P[0] + s2.P[1] == H2
    assert s2.K[0] + s2.K[1] == (y1**2 + y2**2) ** 2 * H2


def test_hamiltonian_validation():
    with pytest.raises(ValueError):
        ClassicalHamiltonian(SP, 0, metric_factor=0)
    with pytest.raises(ValueError):
        ClassicalHamiltonian(SP, 0, kinetic=p1)
    with pytest.raises(ValueError):
        build_degenerate_system(1)


def test_quadratic_tensor_and_substitution():
    S = p1 * p2 * x3 + p3 * p3
    t = S.quadratic_tensor()
    assert t[0][1] == x3 / 2 and t[2][2] == 1 and t[0][0] == 0
    assert S.substitute({"x3": 2}) == 2 * p1 * p2 + p3 * p3


def test_phase_space_momentum_names():
    sp = PhaseSpace.standard(("x", "y"))
    assert sp.momenta == ("p_x", "p_y")
    assert sp.momentum_by_name("p_y") == sp.momentum(1)
