from fractions import Fraction

import pytest

from confsuper import degenerate as dg
from confsuper.algebra import GaussianRational


@pytest.mark.parametrize("n, count", [(2, 6), (3, 10)])
def test_every_generator_is_a_conformal_symmetry(n, count):
    m = dg.symmetry_multipliers(n)
    assert len(m) == count
    assert all(R is not None for R in m.values())


def test_translations_have_zero_multiplier():
    m = dg.symmetry_multipliers(3)
    assert all(m[f"P{j}"].is_zero for j in (1, 2, 3))


def test_linear_identities_in_the_plane():
    assert all(r.holds for r in dg.linear_identities(2))


def test_linear_identities_in_three_dimensions():
    """The two sums hold; the Casimir-type identity needs a different constant."""
    sum_p, sum_k, casimir = dg.linear_identities(3)
    assert sum_p.holds and sum_k.holds
    assert not casimir.holds
    assert casimir.remainder.order() == 0


def test_casimir_constant():
    assert dg.casimir_constant(2) == 0
    assert dg.casimir_constant(3) == GaussianRational(Fraction(-1, 4))
    # (n-2)/2 would give -1/2 here
    assert dg.casimir_constant(3) != GaussianRational(Fraction(-1, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_dilation_grades_the_generators(n):
    defects = dg.dilation_action(n)
    assert "[D,H]-2H" in defects
    assert all(d.is_zero for d in defects.values())


@pytest.mark.parametrize("n", [2, 3])
def test_translations_and_special_maps_commute(n):
    assert all(d.is_zero for d in dg.commuting_pairs(n).values())


@pytest.mark.parametrize("n", [2, 3])
def test_inversion_swaps_translations_and_special_maps(n):
    defects = dg.inversion_defects(n)
    assert len(defects) == n + n * (n - 1) // 2 + 1
    assert all(d.is_zero for d in defects.values())


def test_planar_relations_and_multipliers():
    rels = {r.name: r for r in dg.n2_relations()}
    printed = dg.n2_printed_multipliers()
    for name, R in printed.items():
        assert rels[name].holds
        assert rels[name].R == R


def test_printed_p1k1_commutator_fails():
    rel = dg.n2_relations()[-1]
    assert rel.name.startswith("[P1,K1]")
    assert not rel.holds


def test_derived_p1k1_commutator_holds():
    assert dg.p1k1_derived().holds


def test_fourth_order_relation():
    rep = dg.fourth_order_relation()
    assert rep.relation.holds
    # the displayed right factor is not the one the division produces
    assert not rep.printed_R_matches
    assert dg.derived_fourth_order_multiplier() == rep.relation.R
    assert rep.relation.R != rep.printed_R


def test_sl2_subalgebra():
    defects = dg.sl2_relations()
    assert len(defects) == 6
    for name, d in defects.items():
        assert d.is_zero, name
