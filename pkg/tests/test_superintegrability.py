import pytest

from confsuper import catalog, superintegrability as si


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_fifth_symmetry_raises_the_rank(seed):
    rep = si.fifth_symmetry_exhibit(seed)
    assert rep.multipliers_ok
    assert rep.ranks == {"H+J12,J13,J14": 4, "H+J12,J13,J14,J23": 5, "H+all J": 5}
    assert rep.fifth_exists


def test_null_point_lies_on_the_hypersurface():
    pt = si.null_point(3)
    H = catalog.nondegenerate_hamiltonian().function.to_rational()
    assert H.evaluate(pt) == 0
    assert si.null_point(3) == pt


def test_null_point_accepts_fixed_parameters():
    pt = si.null_point(2, parameters={"a1": 1})
    assert pt["a1"] == 1


def test_jacobian_rank_basics():
    sp = catalog.flat3()
    x, px = sp.function(sp.var("x")), sp.function(sp.var("px"))
    pt = {n: 1 for n in sp.positions + sp.momenta}
    assert si.jacobian_rank([], pt) == 0
    assert si.jacobian_rank([x, px], pt) == 2
    assert si.jacobian_rank([x, 2 * x], pt) == 1
    # x*px has zero gradient at the origin
    assert si.jacobian_rank([x * px], {n: 0 for n in sp.positions + sp.momenta}) == 0
