"""Concrete systems used throughout: flat 3-space, the nondegenerate sphere-derived
Laplace system and its symmetries, and the printed canonical coefficients."""

from __future__ import annotations

from functools import lru_cache

from .algebra import RationalFunction
from .phase_space import ClassicalHamiltonian, PhaseFunction, PhaseSpace

PARAMETERS = ("a1", "a2", "a3", "a4", "a5")


@lru_cache(maxsize=None)
def flat3() -> PhaseSpace:
    """Positions x, y, z with momenta px, py, pz and parameters a1..a5."""
    return PhaseSpace.standard(("x", "y", "z"), PARAMETERS, momenta=("px", "py", "pz"))


def _xyz(space):
    return [space.var(n) for n in space.positions]


def sphere_coordinates(space: PhaseSpace | None = None):
    """s_1..s_4 on the unit 3-sphere as rational functions of x, y, z."""
    space = space or flat3()
    x, y, z = _xyz(space)
    r2 = x * x + y * y + z * z
    return (2 * x / (1 + r2), 2 * y / (1 + r2), 2 * z / (1 + r2), (1 - r2) / (1 + r2))


def nondegenerate_basis(space: PhaseSpace | None = None) -> tuple[RationalFunction, ...]:
    """1/x^2, 1/y^2, 1/z^2, 4/(1-r^2)^2, -4/(1+r^2)^2."""
    space = space or flat3()
    x, y, z = _xyz(space)
    r2 = x * x + y * y + z * z
    return (1 / x**2, 1 / y**2, 1 / z**2, 4 / (1 - r2) ** 2, -4 / (1 + r2) ** 2)


def nondegenerate_potential(space: PhaseSpace | None = None) -> RationalFunction:
    space = space or flat3()
    a = [space.var(p) for p in PARAMETERS]
    return sum((c * f for c, f in zip(a, nondegenerate_basis(space))), RationalFunction.zero(space.registry))


def nondegenerate_hamiltonian(space: PhaseSpace | None = None) -> ClassicalHamiltonian:
    space = space or flat3()
    return ClassicalHamiltonian(space, nondegenerate_potential(space))


def sphere_rotation_generators(space: PhaseSpace | None = None) -> dict:
    """First-order generators L_jk (1 <= j < k <= 4) of the sphere rotations, in flat coordinates."""
    space = space or flat3()
    x, y, z = _xyz(space)
    X = [x, y, z]
    p = [space.momentum(i) for i in range(3)]
    r2 = x * x + y * y + z * z
    euler = p[0] * x + p[1] * y + p[2] * z
    L = {}
    for j in range(3):
        for k in range(j + 1, 3):
            L[(j + 1, k + 1)] = p[k] * X[j] - p[j] * X[k]
    for j in range(3):
        L[(j + 1, 4)] = p[j] * ((1 - r2) / 2) + euler * X[j]
    return L


def nondegenerate_symmetries(space: PhaseSpace | None = None) -> dict:
    """J_jk = L_jk^2 + a_j s_k^2/s_j^2 + a_k s_j^2/s_k^2 for the sphere index pairs."""
    space = space or flat3()
    s = sphere_coordinates(space)
    a = [space.var(n) for n in PARAMETERS[:4]]
    out = {}
    for (j, k), L in sphere_rotation_generators(space).items():
        sj, sk = s[j - 1] ** 2, s[k - 1] ** 2
        out[(j, k)] = L * L + a[j - 1] * sk / sj + a[k - 1] * sj / sk
    return out


def printed_canonical_coefficients(space: PhaseSpace | None = None) -> dict[str, RationalFunction]:
    """The closed-form canonical coefficients of the nondegenerate system."""
    space = space or flat3()
    x, y, z = _xyz(space)
    r2 = x * x + y * y + z * z
    den = 1 - r2 * r2
    c = {}
    c["A33"] = 3 / x + 12 * x * (z * z - x * x) / den
    c["B33"] = 12 * y * (z * z - x * x) / den
    c["C33"] = -3 / z + 12 * z * (z * z - x * x) / den
    c["D33"] = 24 * (z * z - x * x) / den
    c["A22"] = 3 / x + 12 * x * (y * y - x * x) / den
    c["B22"] = -3 / y + 12 * y * (y * y - x * x) / den
    c["C22"] = 12 * z * (y * y - x * x) / den
    c["D22"] = 24 * (y * y - x * x) / den
    c["A23"] = 12 * x * y * z / den
    c["B23"] = 12 * y * y * z / den
    c["C23"] = 12 * y * z * z / den
    c["D23"] = 24 * y * z / den
    c["A13"] = 12 * x * x * z / den
    c["B13"] = 12 * x * y * z / den
    c["C13"] = 12 * x * z * z / den
    c["D13"] = 24 * x * z / den
    c["A12"] = 12 * x * x * y / den
    c["B12"] = 12 * x * y * y / den
    c["C12"] = 12 * x * y * z / den
    c["D12"] = 24 * x * y / den
    return c


def sphere_metric_factor(space: PhaseSpace | None = None) -> RationalFunction:
    space = space or flat3()
    x, y, z = _xyz(space)
    return 4 / (1 + x * x + y * y + z * z) ** 2


def flat_oscillator_basis(space: PhaseSpace | None = None) -> tuple[RationalFunction, ...]:
    """1/x^2, 1/y^2, 1/z^2, r^2, 1: a nondegenerate flat Helmholtz system in Laplace form."""
    space = space or flat3()
    x, y, z = _xyz(space)
    return (1 / x**2, 1 / y**2, 1 / z**2, x * x + y * y + z * z, RationalFunction.one(space.registry))
