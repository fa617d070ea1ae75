"""Sparse multivariate polynomials over the Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _backend as bk
from .gaussian import GaussianRational
from .registry import RegistryMismatch, VariableRegistry


def _scalar(value) -> GaussianRational | None:
    try:
        return GaussianRational.coerce(value)
    except TypeError:
        return None


class Polynomial:
    """A polynomial in the variables of a registry.

    The coefficient domain is QQ unless an imaginary coefficient is present,
    in which case the element lives in the QQ_I ring of the same registry.
    """

    __slots__ = ("registry", "_p")

    def __init__(self, registry: VariableRegistry, element):
        self.registry = registry
        self._p = bk.demote(element, registry)

    # construction ------------------------------------------------------
    @classmethod
    def zero(cls, registry):
        return cls(registry, registry.ring().zero)

    @classmethod
    def one(cls, registry):
        return cls(registry, registry.ring().one)

    @classmethod
    def constant(cls, registry, value):
        c = GaussianRational.coerce(value)
        ring = registry.ring(not c.is_real)
        return cls(registry, ring.ground_new(c.to_domain(not c.is_real)))

    @classmethod
    def variable(cls, registry, name):
        ring = registry.ring()
        return cls(registry, ring.gens[registry.index(name)])

    @classmethod
    def from_terms(cls, registry, terms: Mapping[Sequence[int], object]):
        coeffs = {tuple(m): GaussianRational.coerce(c) for m, c in terms.items()}
        gaussian = any(not c.is_real for c in coeffs.values())
        ring = registry.ring(gaussian)
        out = ring.zero.copy()
        for m, c in coeffs.items():
            if len(m) != len(registry):
                raise ValueError("exponent vector length does not match registry")
            if c:
                out[m] = c.to_domain(gaussian)
        return cls(registry, out)

    # inspection --------------------------------------------------------
    @property
    def element(self):
        return self._p

    @property
    def is_zero(self) -> bool:
        return not self._p

    @property
    def is_constant(self) -> bool:
        return self._p.is_ground

    def constant_value(self) -> GaussianRational:
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return bk.coeff_to_gaussian(self._p.LC) if self._p else GaussianRational(0)

    def terms(self) -> list[tuple[tuple[int, ...], GaussianRational]]:
        items = bk.poly_items(self._p)
        items.sort(key=lambda t: bk.grlex_key(t[0]), reverse=True)
        return items

    def coefficient(self, exponents: Sequence[int]) -> GaussianRational:
        c = self._p.get(tuple(exponents))
        return GaussianRational(0) if c is None else bk.coeff_to_gaussian(c)

    def total_degree(self) -> int:
        if not self._p:
            return -1
        return max(sum(m) for m in self._p.keys())

    def degree(self, name: str) -> int:
        if not self._p:
            return -1
        j = self.registry.index(name)
        return max(m[j] for m in self._p.keys())

    def variables(self) -> tuple[str, ...]:
        used = [False] * len(self.registry)
        for m in self._p.keys():
            for j, e in enumerate(m):
                if e:
                    used[j] = True
        return tuple(n for n, u in zip(self.registry.names, used) if u)

    def __len__(self):
        return len(self._p)

    # arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.registry != self.registry:
                raise RegistryMismatch("polynomials from different registries")
            return other
        c = _scalar(other)
        if c is None:
            return None
        return Polynomial.constant(self.registry, c)

    def _binary(self, other, op):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = bk.unify(self._p, o._p, self.registry)
        return Polynomial(self.registry, op(a, b))

    def __add__(self, other):
        from .rational import RationalFunction

        if isinstance(other, RationalFunction):
            return NotImplemented
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        from .rational import RationalFunction

        if isinstance(other, RationalFunction):
            return NotImplemented
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(self.registry, -self._p)

    def __mul__(self, other):
        from .rational import RationalFunction

        if isinstance(other, RationalFunction):
            return NotImplemented
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        from .rational import RationalFunction

        c = _scalar(other)
        if c is not None and not isinstance(other, Polynomial):
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (GaussianRational(1) / c)
        return RationalFunction.from_polynomial(self) / other

    def __rtruediv__(self, other):
        from .rational import RationalFunction

        return RationalFunction.from_polynomial(self).__rtruediv__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return Polynomial(self.registry, self._p**k)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Polynomial) else other
        if o is None or not isinstance(o, Polynomial):
            return NotImplemented
        if o.registry != self.registry:
            return False
        a, b = bk.unify(self._p, o._p, self.registry)
        return a == b

    def __hash__(self):
        return hash((self.registry, frozenset((m, c) for m, c in self.terms())))

    def __bool__(self):
        return not self.is_zero

    # calculus and evaluation ------------------------------------------
    def diff(self, name: str) -> "Polynomial":
        j = self.registry.index(name)
        return Polynomial(self.registry, self._p.diff(self._p.ring.gens[j]))

    def evaluate(self, point: Mapping[str, object]) -> GaussianRational:
        return evaluate_element(self._p, self.registry, point)

    def substitute(self, bindings, target: VariableRegistry | None = None):
        from .rational import RationalFunction

        return RationalFunction.from_polynomial(self).substitute(bindings, target)

    def to_rational(self):
        from .rational import RationalFunction

        return RationalFunction.from_polynomial(self)

    def divrem(self, divisor: "Polynomial", variables: Iterable[str] | None = None):
        return poly_divrem(self, divisor, variables)

    def __str__(self):
        return bk.format_terms(bk.poly_items(self._p), self.registry.names)

    def __repr__(self):
        return f"Polynomial({self})"


def evaluate_element(p, registry, point: Mapping[str, object]) -> GaussianRational:
    values = {}
    for name, v in point.items():
        if name not in registry:
            continue
        values[registry.index(name)] = GaussianRational.coerce(v)
    needed = set()
    for m in p.keys():
        for j, e in enumerate(m):
            if e:
                needed.add(j)
    missing = [registry.names[j] for j in sorted(needed) if j not in values]
    if missing:
        raise KeyError(f"no value supplied for {', '.join(missing)}")
    total = GaussianRational(0)
    powers: dict[tuple[int, int], GaussianRational] = {}
    for m, c in p.items():
        term = bk.coeff_to_gaussian(c)
        for j, e in enumerate(m):
            if e:
                key = (j, e)
                pw = powers.get(key)
                if pw is None:
                    pw = values[j] ** e
                    powers[key] = pw
                term = term * pw
        total = total + term
    return total


def poly_divrem(f: Polynomial, g: Polynomial, variables: Iterable[str] | None = None):
    """Divide ``f`` by ``g`` in graded-lex order restricted to ``variables``.

    Remaining variables are treated as coefficients.  A term of the running
    dividend is reduced when its monomial in ``variables`` is divisible by
    the leading monomial of ``g`` and its coefficient is divisible by the
    leading coefficient of ``g``; otherwise it moves to the remainder.
    Returns ``(q, r)`` with ``f == q*g + r``.
    """
    if f.registry != g.registry:
        raise RegistryMismatch("polynomials from different registries")
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    reg = f.registry
    names = reg.names if variables is None else tuple(variables)
    idx = [reg.index(n) for n in names]
    pf, pg = bk.unify(f._p, g._p, reg)
    ring = pf.ring

    def split(p):
        groups: dict[tuple[int, ...], dict] = {}
        for m, c in p.items():
            mv = tuple(m[j] for j in idx)
            mo = list(m)
            for j in idx:
                mo[j] = 0
            groups.setdefault(mv, {})[tuple(mo)] = c
        return groups

    def key(mv):
        return (sum(mv), mv)

    def lift(mv):
        e = [0] * len(reg)
        for j, k in zip(idx, mv):
            e[j] = k
        out = ring.zero.copy()
        out[tuple(e)] = ring.domain.one
        return out

    g_groups = split(pg)
    lead_g = max(g_groups, key=key)
    lc_g = ring.from_dict(g_groups[lead_g]) if g_groups[lead_g] else ring.zero
    q = ring.zero
    r = ring.zero
    p = pf
    while p:
        groups = split(p)
        lead = max(groups, key=key)
        coeff = ring.from_dict(groups[lead])
        chunk = coeff * lift(lead)
        if all(a >= b for a, b in zip(lead, lead_g)):
            quo, rem = coeff.div(lc_g)
            if not rem:
                t = quo * lift(tuple(a - b for a, b in zip(lead, lead_g)))
                q = q + t
                p = p - t * pg
                continue
        r = r + chunk
        p = p - chunk
    return Polynomial(reg, q), Polynomial(reg, r)
