"""Functional independence of conformal symmetries on the null hypersurface H = 0."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import catalog
from .algebra import GaussianRational
from .algebra.linalg import rank
from .phase_space import PhaseFunction, is_conformal_symmetry


def jacobian_rank(functions: Sequence[PhaseFunction], point: Mapping[str, object]) -> int:
    """Rank of the Jacobian with respect to all positions and momenta at an exact point."""
    if not functions:
        return 0
    space = functions[0].space
    names = space.positions + space.momenta
    rows = []
    for f in functions:
        rf = f.to_rational()
        rows.append([rf.diff(n).evaluate(point) for n in names])
    return rank(rows)


def null_point(seed: int = 0, parameters: Mapping[str, object] | None = None) -> dict:
    """A random rational phase-space point with H = 0 for the nondegenerate system.

    a1..a4 and the phase coordinates are drawn at random; a5 enters the potential
    linearly and is solved for so that the Hamiltonian vanishes.
    """
    rng = random.Random(seed)
    space = catalog.flat3()
    H = catalog.nondegenerate_hamiltonian(space).function.to_rational()

    def draw():
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))

    point = {n: draw() for n in space.positions + space.momenta + catalog.PARAMETERS[:4]}
    if parameters:
        point.update(parameters)
    slope = H.diff("a5").evaluate({**point, "a5": 0})
    base = H.evaluate({**point, "a5": 0})
    point["a5"] = -base / slope
    assert not H.evaluate(point)
    return point


@dataclass(frozen=True)
class IndependenceReport:
    point: dict
    ranks: dict  # label -> Jacobian rank
    multipliers_ok: bool

    @property
    def fifth_exists(self) -> bool:
        return self.ranks["H+J12,J13,J14"] == 4 and self.ranks["H+all J"] == 5


def fifth_symmetry_exhibit(seed: int = 0) -> IndependenceReport:
    """Four independent constants (H, J12, J13, J14) are completed to five by J23.

    The six sphere symmetries J_jk are checked as conformal symmetries; the
    Jacobian ranks at a random point of H = 0 then show 4 -> 5 and saturation at 5.
    """
    space = catalog.flat3()
    H = catalog.nondegenerate_hamiltonian(space)
    J = catalog.nondegenerate_symmetries(space)
    ok = all(is_conformal_symmetry(S, H) is not None for S in J.values())
    h = H.function
    point = null_point(seed)
    ranks = {
        "H+J12,J13,J14": jacobian_rank([h, J[(1, 2)], J[(1, 3)], J[(1, 4)]], point),
        "H+J12,J13,J14,J23": jacobian_rank([h, J[(1, 2)], J[(1, 3)], J[(1, 4)], J[(2, 3)]], point),
        "H+all J": jacobian_rank([h, *J.values()], point),
    }
    return IndependenceReport(point, ranks, ok)
