"""Classical phase-space functions, Poisson brackets and conformal symmetries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import GaussianRational, RationalFunction, VariableRegistry
from .algebra import sparse
from .algebra.registry import RegistryMismatch


@dataclass(frozen=True)
class PhaseSpace:
    """Positions paired with momenta inside one registry.

    Coefficients of phase-space functions are rational functions in the
    registry that do not involve the momentum variables.
    """

    registry: VariableRegistry
    positions: tuple[str, ...]
    momenta: tuple[str, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.momenta):
            raise ValueError("positions and momenta must pair up")
        for name in self.positions + self.momenta:
            self.registry.index(name)

    @classmethod
    def standard(
        cls,
        positions: Sequence[str],
        parameters: Sequence[str] = (),
        momenta: Sequence[str] | None = None,
        auxiliary: Sequence[str] = (),
    ) -> "PhaseSpace":
        momenta = tuple(momenta) if momenta is not None else tuple(f"p_{p}" for p in positions)
        reg = VariableRegistry.build(
            positions=positions, momenta=momenta, parameters=parameters, auxiliary=auxiliary
        )
        return cls(reg, tuple(positions), tuple(momenta))

    @property
    def dim(self) -> int:
        return len(self.positions)

    def var(self, name: str) -> RationalFunction:
        return self.registry.var(name)

    def function(self, value) -> "PhaseFunction":
        return PhaseFunction.coerce(self, value)

    def momentum(self, i: int) -> "PhaseFunction":
        e = [0] * self.dim
        e[i] = 1
        return PhaseFunction(self, {tuple(e): RationalFunction.one(self.registry)})

    def momentum_by_name(self, name: str) -> "PhaseFunction":
        if name in self.momenta:
            return self.momentum(self.momenta.index(name))
        return self.momentum(self.positions.index(name))

    def free_kinetic(self) -> "PhaseFunction":
        out = PhaseFunction.zero(self)
        for i in range(self.dim):
            out = out + self.momentum(i) * self.momentum(i)
        return out


class PhaseFunction:
    """Polynomial in the momenta with rational-function coefficients."""

    __slots__ = ("space", "terms")

    def __init__(self, space: PhaseSpace, terms: Mapping[tuple[int, ...], RationalFunction]):
        self.space = space
        self.terms = sparse.clean(dict(terms))

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def coerce(cls, space, value) -> "PhaseFunction":
        if isinstance(value, PhaseFunction):
            if value.space != space:
                raise RegistryMismatch("phase functions over different phase spaces")
            return value
        rf = RationalFunction.coerce(space.registry, value)
        if any(rf.depends_on(p) for p in space.momenta):
            return cls.from_rational(space, rf)
        return cls(space, {(0,) * space.dim: rf})

    @classmethod
    def from_rational(cls, space, rf: RationalFunction) -> "PhaseFunction":
        """Split a rational function that is polynomial in the momenta."""
        reg = space.registry
        if any(rf.den_element.degree(rf.den_element.ring.gens[reg.index(p)]) > 0 for p in space.momenta):
            raise ValueError("momenta appear in the denominator")
        midx = [reg.index(p) for p in space.momenta]
        groups: dict[tuple[int, ...], dict] = {}
        for m, c in rf.num_element.items():
            key = tuple(m[j] for j in midx)
            rest = list(m)
            for j in midx:
                rest[j] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        ring = rf.num_element.ring
        den = RationalFunction(reg, rf.den_element, normalized=True)
        terms = {
            k: RationalFunction(reg, ring.from_dict(v), rf.den_element)
            for k, v in groups.items()
        }
        return cls(space, terms)

    def to_rational(self) -> RationalFunction:
        out = RationalFunction.zero(self.space.registry)
        moms = [self.space.var(p) for p in self.space.momenta]
        for m, c in self.terms.items():
            t = c
            for v, e in zip(moms, m):
                if e:
                    t = t * v**e
            out = out + t
        return out

    # arithmetic --------------------------------------------------------
    def _co(self, other):
        if isinstance(other, PhaseFunction):
            if other.space != self.space:
                raise RegistryMismatch("phase functions over different phase spaces")
            return other
        try:
            return PhaseFunction.coerce(self.space, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return PhaseFunction(self.space, sparse.add(self.terms, o.terms))

    __radd__ = __add__

    def __neg__(self):
        return PhaseFunction(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return PhaseFunction(self.space, sparse.add(self.terms, o.terms, sign=-1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return PhaseFunction(self.space, sparse.mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PhaseFunction):
            if other.degree() > 0:
                raise ValueError("can only divide by momentum-free functions")
            other = other.coefficient((0,) * self.space.dim)
        rf = RationalFunction.coerce(self.space.registry, other)
        inv = rf.inverse()
        return PhaseFunction(self.space, {m: c * inv for m, c in self.terms.items()})

    def __pow__(self, k: int):
        out = PhaseFunction.coerce(self.space, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return not (self - o).terms

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # structure ---------------------------------------------------------
    def degree(self) -> int:
        return sparse.degree(self.terms)

    def homogeneous_part(self, k: int) -> "PhaseFunction":
        return PhaseFunction(self.space, sparse.homogeneous_part(self.terms, k))

    def coefficient(self, exponents: Sequence[int]) -> RationalFunction:
        return self.terms.get(tuple(exponents), RationalFunction.zero(self.space.registry))

    def quadratic_tensor(self) -> list[list[RationalFunction]]:
        """Symmetric matrix a with quadratic part sum_ij a^{ij} p_i p_j."""
        n = self.space.dim
        half = GaussianRational(1, 0) / 2
        a = [[RationalFunction.zero(self.space.registry)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                e = [0] * n
                e[i] += 1
                e[j] += 1
                c = self.coefficient(e)
                a[i][j] = c if i == j else c * half
        return a

    def diff_position(self, i: int) -> "PhaseFunction":
        name = self.space.positions[i]
        return PhaseFunction(self.space, {m: c.diff(name) for m, c in self.terms.items()})

    def diff_momentum(self, i: int) -> "PhaseFunction":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return PhaseFunction(self.space, out)

    def substitute(self, bindings) -> "PhaseFunction":
        return PhaseFunction(self.space, {m: c.substitute(bindings) for m, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=sparse.grlex_key, reverse=True):
            mono = "*".join(
                (p if e == 1 else f"{p}^{e}") for p, e in zip(self.space.momenta, m) if e
            )
            c = str(self.terms[m])
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"PhaseFunction({self})"


def poisson_bracket(f: PhaseFunction, g: PhaseFunction) -> PhaseFunction:
    """{f, g} = sum_i (d f/d x_i)(d g/d p_i) - (d f/d p_i)(d g/d x_i)."""
    if f.space != g.space:
        raise RegistryMismatch("phase functions over different phase spaces")
    out = PhaseFunction.zero(f.space)
    for i in range(f.space.dim):
        out = out + f.diff_position(i) * g.diff_momentum(i) - f.diff_momentum(i) * g.diff_position(i)
    return out


@dataclass(frozen=True)
class ClassicalHamiltonian:
    """H = kinetic / metric_factor + potential."""

    space: PhaseSpace
    potential: RationalFunction
    metric_factor: RationalFunction | None = None
    kinetic: PhaseFunction | None = None

    def __post_init__(self):
        reg = self.space.registry
        object.__setattr__(self, "potential", RationalFunction.coerce(reg, self.potential))
        lam = RationalFunction.one(reg) if self.metric_factor is None else RationalFunction.coerce(reg, self.metric_factor)
        if lam.is_zero:
            raise ValueError("metric factor must be nonzero")
        object.__setattr__(self, "metric_factor", lam)
        kin = self.space.free_kinetic() if self.kinetic is None else self.kinetic
        if kin.degree() != 2 or kin.homogeneous_part(2) != kin:
            raise ValueError("kinetic part must be homogeneous quadratic in the momenta")
        object.__setattr__(self, "kinetic", kin)

    @property
    def function(self) -> PhaseFunction:
        return self.kinetic / self.metric_factor + self.potential

    def with_potential(self, potential) -> "ClassicalHamiltonian":
        return ClassicalHamiltonian(self.space, potential, self.metric_factor, self.kinetic)


def _as_function(H) -> PhaseFunction:
    return H.function if isinstance(H, ClassicalHamiltonian) else H


def divide_by_hamiltonian(F: PhaseFunction, H) -> tuple[PhaseFunction, PhaseFunction]:
    """Momentum division of F by H over the field of coefficient functions."""
    h = _as_function(H)
    q, r = sparse.divrem(F.terms, h.terms)
    return PhaseFunction(F.space, q), PhaseFunction(F.space, r)


def is_conformal_symmetry(S: PhaseFunction, H) -> PhaseFunction | None:
    """Return the multiplier b with {S, H} = b H, or None if S is not one."""
    h = _as_function(H)
    q, r = divide_by_hamiltonian(poisson_bracket(S, h), h)
    if not r.is_zero:
        return None
    return q


def reduce_mod_hamiltonian(S: PhaseFunction, H) -> PhaseFunction:
    """Representative of S modulo H whose p_1^2 coefficient vanishes."""
    h = _as_function(H)
    if S.degree() > 2:
        raise ValueError("reduction is defined for momentum degree at most two")
    n = S.space.dim
    e = tuple(2 if k == 0 else 0 for k in range(n))
    lead_h = h.coefficient(e)
    if lead_h.is_zero:
        raise ValueError("Hamiltonian has no p_1^2 term")
    return S - h * (S.coefficient(e) / lead_h)


def involution_check(S: PhaseFunction, T: PhaseFunction, H) -> bool:
    """True when {S, T} reduces to zero modulo H."""
    _, r = divide_by_hamiltonian(poisson_bracket(S, T), _as_function(H))
    return r.is_zero


@dataclass(frozen=True)
class DegenerateSystem:
    space: PhaseSpace
    hamiltonian: ClassicalHamiltonian
    P: tuple[PhaseFunction, ...]
    J: dict
    K: tuple[PhaseFunction, ...]
    D: PhaseFunction


def build_degenerate_system(
    n: int,
    parameters: Sequence[str] | None = None,
    coords: Sequence[str] | None = None,
) -> DegenerateSystem:
    """Classical generators of the inverse-square system sum_i p_i^2 + a_i/x_i^2."""
    if n < 2:
        raise ValueError("dimension must be at least two")
    coords = tuple(coords) if coords is not None else tuple(f"x{i + 1}" for i in range(n))
    parameters = tuple(parameters) if parameters is not None else tuple(f"a{i + 1}" for i in range(n))
    if len(coords) != n or len(parameters) != n:
        raise ValueError("need one coordinate and one parameter per dimension")
    space = PhaseSpace.standard(coords, parameters, momenta=[f"p{i + 1}" for i in range(n)])
    xs = [space.var(c) for c in coords]
    a = [space.var(c) for c in parameters]
    p = [space.momentum(i) for i in range(n)]
    r2 = sum((x * x for x in xs), RationalFunction.zero(space.registry))
    V = sum((a[i] / xs[i] ** 2 for i in range(n)), RationalFunction.zero(space.registry))
    H = ClassicalHamiltonian(space, V)
    P = tuple(p[i] * p[i] + a[i] / xs[i] ** 2 for i in range(n))
    J = {}
    for j in range(n):
        for k in range(j + 1, n):
            m = p[k] * xs[j] - p[j] * xs[k]
            J[(j + 1, k + 1)] = m * m + a[j] * xs[k] ** 2 / xs[j] ** 2 + a[k] * xs[j] ** 2 / xs[k] ** 2
    euler = sum((p[i] * xs[i] for i in range(n)), PhaseFunction.zero(space))
    K = []
    for j in range(n):
        L = p[j] * (-r2) + euler * (2 * xs[j])
        K.append(L * L + a[j] * r2**2 / xs[j] ** 2)
    return DegenerateSystem(space, H, P, J, tuple(K), -euler)
