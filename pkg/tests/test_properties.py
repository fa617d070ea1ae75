"""Seeded 100-case property runs plus hypothesis-driven checks over random seeds."""

import random

import pytest
from hypothesis import given, settings, strategies as st

import properties as P
from confsuper.algebra import poly_divrem
from confsuper.diffop import commutator
from confsuper.phase_space import poisson_bracket

CHECKS = [
    ("ring axioms, rational", lambda: P.check_ring_axioms(kind="rational")),
    ("ring axioms, polynomial", lambda: P.check_ring_axioms(kind="poly")),
    ("Leibniz rule", P.check_leibniz),
    ("chain rule", P.check_chain_rule),
    ("Poisson Jacobi", P.check_poisson_jacobi),
    ("commutator Jacobi", P.check_commutator_jacobi),
    ("division with remainder", P.check_divrem),
    ("normalization idempotent", P.check_normalization_idempotent),
    ("Taylor linearity", P.check_series_linearity),
    ("potential series linearity", P.check_potential_series_linearity),
]


@pytest.mark.parametrize("label, check", CHECKS, ids=[c[0] for c in CHECKS])
def test_seeded_property(label, check):
    cases, failures = check()
    assert cases == 100
    assert failures == []


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_rational_field_identities(seed):
    rng = random.Random(seed)
    f, g = P.rational(rng), P.rational(rng)
    assert (f + g) - g == f
    assert (f - g) + g == f
    if not g.is_zero:
        assert (f / g) * g == f


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_divrem_reconstructs(seed):
    rng = random.Random(seed)
    a, b = P.polynomial(rng), P.nonzero_polynomial(rng)
    q, r = poly_divrem(a, b)
    assert q * b + r == a


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_poisson_bracket_is_antisymmetric_and_leibniz(seed):
    rng = random.Random(seed)
    f, g, h = (P.phase_function(rng) for _ in range(3))
    assert poisson_bracket(f, g) == -poisson_bracket(g, f)
    assert poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_commutator_is_antisymmetric(seed):
    rng = random.Random(seed)
    A, B = P.operator(rng), P.operator(rng)
    assert (commutator(A, B) + commutator(B, A)).is_zero


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_derivative_is_linear(seed):
    rng = random.Random(seed)
    f, g = P.rational(rng), P.rational(rng)
    c = P.scalar(rng)
    assert (c * f + g).diff("x") == c * f.diff("x") + g.diff("x")
