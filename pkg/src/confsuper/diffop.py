"""Linear differential operators with rational coefficients.

An operator is stored as ``{alpha: c_alpha}`` meaning ``sum c_alpha d^alpha``
with coefficients to the left of the derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .algebra import GaussianRational, RationalFunction
from .algebra import sparse
from .algebra.registry import RegistryMismatch
from .phase_space import PhaseSpace


class DiffOperator:
    __slots__ = ("space", "terms")

    def __init__(self, space: PhaseSpace, terms: Mapping[tuple[int, ...], RationalFunction]):
        self.space = space
        self.terms = sparse.clean(dict(terms))

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def multiplication(cls, space, f) -> "DiffOperator":
        rf = RationalFunction.coerce(space.registry, f)
        return cls(space, {(0,) * space.dim: rf})

    @classmethod
    def identity(cls, space):
        return cls.multiplication(space, 1)

    @classmethod
    def partial(cls, space, i: int, k: int = 1) -> "DiffOperator":
        e = [0] * space.dim
        e[i] = k
        return cls(space, {tuple(e): RationalFunction.one(space.registry)})

    @classmethod
    def coerce(cls, space, value) -> "DiffOperator":
        if isinstance(value, DiffOperator):
            if value.space != space:
                raise RegistryMismatch("operators over different coordinate sets")
            return value
        return cls.multiplication(space, value)

    # structure ---------------------------------------------------------
    def order(self) -> int:
        return sparse.degree(self.terms)

    def homogeneous_part(self, k: int) -> "DiffOperator":
        return DiffOperator(self.space, sparse.homogeneous_part(self.terms, k))

    def principal_symbol(self) -> dict:
        return sparse.homogeneous_part(self.terms, self.order())

    def coefficient(self, alpha: Sequence[int]) -> RationalFunction:
        return self.terms.get(tuple(alpha), RationalFunction.zero(self.space.registry))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def apply(self, f) -> RationalFunction:
        f = RationalFunction.coerce(self.space.registry, f)
        out = RationalFunction.zero(self.space.registry)
        for alpha, c in self.terms.items():
            g = f
            for i, k in enumerate(alpha):
                for _ in range(k):
                    g = g.diff(self.space.positions[i])
            out = out + c * g
        return out

    # arithmetic --------------------------------------------------------
    def _co(self, other):
        if isinstance(other, DiffOperator):
            if other.space != self.space:
                raise RegistryMismatch("operators over different coordinate sets")
            return other
        try:
            return DiffOperator.multiplication(self.space, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return DiffOperator(self.space, sparse.add(self.terms, o.terms))

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return DiffOperator(self.space, sparse.add(self.terms, o.terms, sign=-1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Composition ``self o other``."""
        o = self._co(other)
        if o is None:
            return NotImplemented
        return compose(self, o)

    def __rmul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return compose(o, self)

    def __truediv__(self, other):
        rf = RationalFunction.coerce(self.space.registry, other)
        return compose(self, DiffOperator.multiplication(self.space, rf.inverse()))

    def __pow__(self, k: int):
        out = DiffOperator.identity(self.space)
        for _ in range(k):
            out = compose(out, self)
        return out

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return not (self - o).terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=sparse.grlex_key, reverse=True):
            mono = "*".join(
                (f"d[{i + 1}]" if e == 1 else f"d[{i + 1}]^{e}") for i, e in enumerate(m) if e
            )
            c = str(self.terms[m])
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOperator({self})"


def _multi_binomial(alpha, gamma) -> int:
    out = 1
    for a, g in zip(alpha, gamma):
        out *= comb(a, g)
    return out


def compose(A: DiffOperator, B: DiffOperator) -> DiffOperator:
    """Leibniz composition: A o B = sum a_alpha C(alpha, gamma) d^gamma(b_beta) d^(alpha-gamma+beta)."""
    if A.space != B.space:
        raise RegistryMismatch("operators over different coordinate sets")
    space = A.space
    names = space.positions
    cache: dict = {}

    def deriv(beta, gamma):
        key = (beta, gamma)
        v = cache.get(key)
        if v is not None:
            return v
        if not any(gamma):
            v = B.terms[beta]
        else:
            i = next(k for k, g in enumerate(gamma) if g)
            lower = list(gamma)
            lower[i] -= 1
            v = deriv(beta, tuple(lower)).diff(names[i])
        cache[key] = v
        return v

    out: dict = {}
    for alpha, a in A.terms.items():
        for beta in B.terms:
            for gamma in product(*(range(k + 1) for k in alpha)):
                db = deriv(beta, gamma)
                if not db:
                    continue
                c = a * db
                binom = _multi_binomial(alpha, gamma)
                if binom != 1:
                    c = c * binom
                m = tuple(al - g + b for al, g, b in zip(alpha, gamma, beta))
                out[m] = out[m] + c if m in out else c
    return DiffOperator(space, out)


def commutator(A: DiffOperator, B: DiffOperator) -> DiffOperator:
    return compose(A, B) - compose(B, A)


def _laplace_symbol(space) -> dict:
    n = space.dim
    one = RationalFunction.one(space.registry)
    return {tuple(2 if k == i else 0 for k in range(n)): one for i in range(n)}


def op_mod_H(X: DiffOperator, H: DiffOperator) -> tuple[DiffOperator, DiffOperator]:
    """Write X = R o H + remainder with a canonical remainder.

    H must have principal symbol sum_i d_i^2.  At each order the top symbol
    of the running operator is divided by the symbol of H; the remainder
    symbol at every order has no term divisible by d_1^2.
    """
    if X.space != H.space:
        raise RegistryMismatch("operators over different coordinate sets")
    lap = _laplace_symbol(H.space)
    if H.order() != 2 or H.principal_symbol() != lap:
        top = H.principal_symbol()
        if set(top) != set(lap) or any(top[m] != lap[m] for m in lap):
            raise ValueError("H must have principal symbol sum_i d_i^2")
    space = X.space
    R = DiffOperator.zero(space)
    rem = DiffOperator.zero(space)
    work = X
    for k in range(work.order(), 1, -1):
        top = sparse.homogeneous_part(work.terms, k)
        if not top:
            continue
        q, r = sparse.divrem(top, lap)
        Q = DiffOperator(space, q)
        Rk = DiffOperator(space, r)
        R = R + Q
        rem = rem + Rk
        work = work - compose(Q, H) - Rk
    rem = rem + work
    return R, rem


def is_conformal_symmetry_op(S: DiffOperator, H: DiffOperator) -> DiffOperator | None:
    """Return R with [S, H] = R o H, or None."""
    R, rem = op_mod_H(commutator(S, H), H)
    return R if rem.is_zero else None


def conjugate_by_log_gradient(X: DiffOperator, g: Sequence[RationalFunction]) -> DiffOperator:
    """mu^{-1} o X o mu given g_i = d_i log mu; mu itself may be non-rational."""
    space = X.space
    n = space.dim
    shifted = [DiffOperator.partial(space, i) + g[i] for i in range(n)]
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = DiffOperator.identity(space) if k == 0 else compose(power(i, k - 1), shifted[i])
        return powers[key]

    out = DiffOperator.zero(space)
    for alpha, c in X.terms.items():
        op = DiffOperator.multiplication(space, c)
        for i, k in enumerate(alpha):
            if k:
                op = compose(op, power(i, k))
        out = out + op
    return out


def gauge_conjugate(H: DiffOperator, f) -> DiffOperator:
    """f^{-1} o H o f for a nonzero rational function f."""
    f = RationalFunction.coerce(H.space.registry, f)
    if f.is_zero:
        raise ZeroDivisionError("gauge factor must be nonzero")
    g = [f.diff(x) / f for x in H.space.positions]
    return conjugate_by_log_gradient(H, g)


def _r2(space):
    return sum((space.var(x) ** 2 for x in space.positions), RationalFunction.zero(space.registry))


def inversion_conjugate(S: DiffOperator) -> DiffOperator:
    """I o S o I for the Kelvin inversion I psi(x) = r^{2-n} psi(x / r^2)."""
    space = S.space
    n = space.dim
    xs = [space.var(x) for x in space.positions]
    r2 = _r2(space)
    image = {x: xx / r2 for x, xx in zip(space.positions, xs)}
    # pullback of d_j by the involution x -> x/r^2
    T = []
    for j in range(n):
        terms = {}
        for k in range(n):
            c = (r2 if k == j else RationalFunction.zero(space.registry)) - 2 * xs[k] * xs[j]
            if c:
                e = [0] * n
                e[k] = 1
                terms[tuple(e)] = c
        T.append(DiffOperator(space, terms))
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = DiffOperator.identity(space) if k == 0 else compose(power(i, k - 1), T[i])
        return powers[key]

    pulled = DiffOperator.zero(space)
    for alpha, c in S.terms.items():
        op = DiffOperator.multiplication(space, c.substitute(image))
        for i, k in enumerate(alpha):
            if k:
                op = compose(op, power(i, k))
        pulled = pulled + op
    g = [xx * (n - 2) / r2 for xx in xs]
    return conjugate_by_log_gradient(pulled, g)


@dataclass(frozen=True)
class QuantumGenerators:
    space: PhaseSpace
    H: DiffOperator
    P: tuple[DiffOperator, ...]
    J: dict
    K: tuple[DiffOperator, ...]
    D: DiffOperator


def build_quantum_generators(
    n: int,
    parameters: Sequence[str] | None = None,
    coords: Sequence[str] | None = None,
) -> QuantumGenerators:
    """Second-order conformal symmetries of H = Laplacian + sum a_j/x_j^2."""
    coords = tuple(coords) if coords is not None else tuple(f"x{i + 1}" for i in range(n))
    parameters = tuple(parameters) if parameters is not None else tuple(f"a{i + 1}" for i in range(n))
    space = PhaseSpace.standard(coords, parameters, momenta=[f"p{i + 1}" for i in range(n)])
    reg = space.registry
    xs = [space.var(c) for c in coords]
    a = [space.var(c) for c in parameters]
    d = [DiffOperator.partial(space, i) for i in range(n)]
    r2 = _r2(space)
    euler = DiffOperator.zero(space)
    for i in range(n):
        euler = euler + compose(DiffOperator.multiplication(space, xs[i]), d[i])
    P = tuple(compose(d[j], d[j]) + a[j] / xs[j] ** 2 for j in range(n))
    H = sum(P[1:], P[0])
    J = {}
    for j in range(n):
        for k in range(j + 1, n):
            m = xs[j] * d[k] - xs[k] * d[j]
            J[(j + 1, k + 1)] = compose(m, m) + a[j] * xs[k] ** 2 / xs[j] ** 2 + a[k] * xs[j] ** 2 / xs[k] ** 2
    K = []
    for j in range(n):
        L = xs[j] * (n - 2) - r2 * d[j] + (2 * xs[j]) * euler
        K.append(compose(L, L) + a[j] * r2**2 / xs[j] ** 2)
    D = -euler - GaussianRational(n - 2) / 2
    return QuantumGenerators(space, H, P, J, tuple(K), D)
