"""Conformal Killing vectors and second-order conformal Killing tensors on flat 3-space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, RationalFunction, linalg
from .algebra.registry import RegistryMismatch
from .phase_space import PhaseFunction, PhaseSpace


@dataclass(frozen=True)
class ConformalKillingVector:
    """Vector field sum_i c_i d_i, equivalently the phase function sum_i c_i p_i."""

    space: PhaseSpace
    components: tuple[Polynomial, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.components) != self.space.dim:
            raise ValueError("one component per position is required")
        for c in self.components:
            if c.registry != self.space.registry:
                raise RegistryMismatch("component from a different registry")

    def as_phase_function(self) -> PhaseFunction:
        out = PhaseFunction.zero(self.space)
        for i, c in enumerate(self.components):
            out = out + self.space.momentum(i) * c.to_rational()
        return out

    def degree(self) -> int:
        return max(c.total_degree() for c in self.components)


def ck_vector_basis(space: PhaseSpace) -> list[ConformalKillingVector]:
    """Translations, rotations, dilation and special conformal generators."""
    if space.dim != 3:
        raise ValueError("the ten-generator basis is for three dimensions")
    reg = space.registry
    X = [Polynomial.variable(reg, n) for n in space.positions]
    zero = Polynomial.zero(reg)
    one = Polynomial.one(reg)
    x, y, z = X
    names = space.positions
    out = []
    for i in range(3):
        comps = [zero] * 3
        comps[i] = one
        out.append(ConformalKillingVector(space, tuple(comps), f"p_{names[i]}"))
    # rotations x_j p_k - x_k p_j for the cyclic pairs (2,3), (3,1), (1,2)
    for j, k in ((2, 1), (0, 2), (1, 0)):
        comps = [zero] * 3
        comps[k] = X[j]
        comps[j] = -X[k]
        out.append(ConformalKillingVector(space, tuple(comps), f"rot_{names[j]}{names[k]}"))
    out.append(ConformalKillingVector(space, (x, y, z), "dilation"))
    r2 = x * x + y * y + z * z
    for i in range(3):
        comps = [2 * X[i] * X[k] for k in range(3)]
        comps[i] = 2 * X[i] * X[i] - r2
        out.append(ConformalKillingVector(space, tuple(comps), f"special_{names[i]}"))
    return out


def ck_vector_in_span(v: ConformalKillingVector, basis: Sequence[ConformalKillingVector]) -> bool:
    """Exact span membership via the coefficient vectors of the components."""
    monos = set()
    for w in list(basis) + [v]:
        for i, c in enumerate(w.components):
            for m, _ in c.terms():
                monos.add((i, m))
    monos = sorted(monos)

    def vec(w):
        return [w.components[i].coefficient(m) for i, m in monos]

    columns = [vec(w) for w in basis]
    base = linalg.rank([list(col) for col in columns])
    return linalg.rank([list(col) for col in columns] + [vec(v)]) == base


class CKTensor:
    """Symmetric 3x3 tensor a^{ij} of rational functions with multiplier b_i = 2 a^{ii}_i."""

    __slots__ = ("space", "a")

    def __init__(self, space: PhaseSpace, a: Sequence[Sequence[RationalFunction]]):
        n = space.dim
        reg = space.registry
        rows = [[RationalFunction.coerce(reg, a[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("tensor must be symmetric")
        self.space = space
        self.a = tuple(tuple(r) for r in rows)

    @classmethod
    def from_phase_function(cls, S: PhaseFunction) -> "CKTensor":
        return cls(S.space, S.quadratic_tensor())

    def to_phase_function(self) -> PhaseFunction:
        n = self.space.dim
        out = PhaseFunction.zero(self.space)
        for i in range(n):
            for j in range(n):
                out = out + self.space.momentum(i) * self.space.momentum(j) * self.a[i][j]
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    @property
    def b(self) -> tuple[RationalFunction, ...]:
        names = self.space.positions
        return tuple(2 * self.a[i][i].diff(names[i]) for i in range(self.space.dim))

    def shifted(self, g) -> "CKTensor":
        """a + g * identity, the tensor of S + g H."""
        g = RationalFunction.coerce(self.space.registry, g)
        n = self.space.dim
        return CKTensor(
            self.space, [[self.a[i][j] + (g if i == j else 0) for j in range(n)] for i in range(n)]
        )

    def __add__(self, other: "CKTensor"):
        n = self.space.dim
        return CKTensor(self.space, [[self.a[i][j] + other.a[i][j] for j in range(n)] for i in range(n)])

    def scaled(self, c) -> "CKTensor":
        n = self.space.dim
        return CKTensor(self.space, [[self.a[i][j] * c for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        if not isinstance(other, CKTensor):
            return NotImplemented
        return self.space == other.space and all(
            self.a[i][j] == other.a[i][j] for i in range(self.space.dim) for j in range(self.space.dim)
        )

    __hash__ = None

    def __repr__(self):
        return "CKTensor(" + ", ".join(f"a{i+1}{j+1}={self.a[i][j]}" for i in range(3) for j in range(i, 3)) + ")"


def symmetric_product(u: ConformalKillingVector, v: ConformalKillingVector) -> CKTensor:
    n = u.space.dim
    half = Fraction(1, 2)
    a = [
        [
            (u.components[i] * v.components[j] + u.components[j] * v.components[i]).to_rational() * half
            for j in range(n)
        ]
        for i in range(n)
    ]
    return CKTensor(u.space, a)


def verify_ck_tensor(t: CKTensor) -> list[str]:
    """Violated conformal Killing equations, as readable strings (empty if none)."""
    names = t.space.positions
    n = t.space.dim
    a = t.a
    bad = []
    for i in range(n):
        lead = a[i][i].diff(names[i])
        for j in range(n):
            if j == i:
                continue
            expr = 2 * a[i][j].diff(names[j]) + a[j][j].diff(names[i]) - lead
            if expr:
                bad.append(f"2 a^{i+1}{j+1}_{j+1} + a^{j+1}{j+1}_{i+1} - a^{i+1}{i+1}_{i+1} = {expr}")
    if n == 3:
        cyc = a[0][1].diff(names[2]) + a[2][0].diff(names[1]) + a[1][2].diff(names[0])
        if cyc:
            bad.append(f"cyclic sum = {cyc}")
    return bad


def is_ck_tensor(t: CKTensor) -> bool:
    return not verify_ck_tensor(t)


class DegreeBoundViolation(ValueError):
    """A reduced variable is not a polynomial of degree at most four."""


def reduced_variables(t: CKTensor, strict: bool = True) -> tuple[RationalFunction, ...]:
    """(a^22 - a^11, a^33 - a^11, a^12, a^13, a^23).

    For a conformal Killing tensor each is a polynomial of degree <= 4; with
    ``strict`` a violation raises :class:`DegreeBoundViolation`.
    """
    a = t.a
    out = (a[1][1] - a[0][0], a[2][2] - a[0][0], a[0][1], a[0][2], a[1][2])
    if strict:
        for k, f in enumerate(out):
            if not f.is_polynomial or f.as_polynomial().total_degree() > 4:
                raise DegreeBoundViolation(f"reduced variable {k} is not a polynomial of degree <= 4: {f}")
    return out
