"""Exact rational functions: a numerator/denominator pair of polynomials."""

from __future__ import annotations

from typing import Mapping

from . import _backend as bk
from .gaussian import GaussianRational
from .polynomial import Polynomial, evaluate_element
from .registry import RegistryMismatch, VariableRegistry


class PoleError(ZeroDivisionError):
    """Evaluation or substitution hit a zero of a denominator."""


def _normalize(registry, num, den):
    num, den = bk.unify(num, den, registry)
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return registry.ring().zero, registry.ring().one
    if den.is_ground:
        c = den.LC
        if c != den.ring.domain.one:
            num = num.quo_ground(c)
        den = den.ring.one
    else:
        g = bk.poly_gcd(num, den)
        if not g.is_ground:
            num = num.exquo(g)
            den = den.exquo(g)
        lc = den.LC
        if lc != den.ring.domain.one:
            num = num.quo_ground(lc)
            den = den.monic()
    num = bk.demote(num, registry)
    den = bk.demote(den, registry)
    if bk.is_gaussian(num) != bk.is_gaussian(den):
        num, den = bk.unify(num, den, registry)
    return num, den


class RationalFunction:
    """Quotient of two polynomials in a registry, kept in lowest terms.

    Equality is decided by cross-multiplication.  The denominator is
    normalised to leading coefficient one in the registry's graded-lex order.
    """

    __slots__ = ("registry", "_num", "_den")

    def __init__(self, registry: VariableRegistry, num, den=None, *, normalized: bool = False):
        self.registry = registry
        if den is None:
            den = num.ring.one
        if normalized:
            self._num, self._den = num, den
        else:
            self._num, self._den = _normalize(registry, num, den)

    # construction ------------------------------------------------------
    @classmethod
    def constant(cls, registry, value):
        return cls.from_polynomial(Polynomial.constant(registry, value))

    @classmethod
    def zero(cls, registry):
        ring = registry.ring()
        return cls(registry, ring.zero, ring.one, normalized=True)

    @classmethod
    def one(cls, registry):
        ring = registry.ring()
        return cls(registry, ring.one, ring.one, normalized=True)

    @classmethod
    def variable(cls, registry, name):
        ring = registry.ring()
        return cls(registry, ring.gens[registry.index(name)], ring.one, normalized=True)

    @classmethod
    def from_polynomial(cls, p: Polynomial):
        return cls(p.registry, p.element, p.element.ring.one, normalized=True)

    @classmethod
    def from_polynomials(cls, num: Polynomial, den: Polynomial):
        if num.registry != den.registry:
            raise RegistryMismatch("numerator and denominator registries differ")
        return cls(num.registry, num.element, den.element)

    @classmethod
    def coerce(cls, registry, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            if value.registry != registry:
                raise RegistryMismatch("rational functions from different registries")
            return value
        if isinstance(value, Polynomial):
            if value.registry != registry:
                raise RegistryMismatch("polynomial from a different registry")
            return cls.from_polynomial(value)
        if isinstance(value, str):
            return cls.variable(registry, value)
        return cls.constant(registry, value)

    # inspection --------------------------------------------------------
    @property
    def numerator(self) -> Polynomial:
        return Polynomial(self.registry, self._num)

    @property
    def denominator(self) -> Polynomial:
        return Polynomial(self.registry, self._den)

    @property
    def num_element(self):
        return self._num

    @property
    def den_element(self):
        return self._den

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def is_polynomial(self) -> bool:
        return self._den.is_ground

    @property
    def is_constant(self) -> bool:
        return self._den.is_ground and self._num.is_ground

    def constant_value(self) -> GaussianRational:
        if not self.is_constant:
            raise ValueError("not a constant")
        n = bk.coeff_to_gaussian(self._num.LC) if self._num else GaussianRational(0)
        return n / bk.coeff_to_gaussian(self._den.LC)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial:
            raise ValueError("rational function has a nontrivial denominator")
        c = bk.coeff_to_gaussian(self._den.LC)
        return Polynomial(self.registry, self._num) / c

    @property
    def is_gaussian(self) -> bool:
        return bk.is_gaussian(self._num)

    def variables(self) -> tuple[str, ...]:
        used = set(self.numerator.variables()) | set(self.denominator.variables())
        return tuple(n for n in self.registry.names if n in used)

    def depends_on(self, name: str) -> bool:
        j = self.registry.index(name)
        return any(m[j] for m in self._num.keys()) or any(m[j] for m in self._den.keys())

    def size(self) -> int:
        return len(self._num) + len(self._den)

    # arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.registry != self.registry:
                raise RegistryMismatch("rational functions from different registries")
            return other
        if isinstance(other, Polynomial):
            if other.registry != self.registry:
                raise RegistryMismatch("polynomial from a different registry")
            return RationalFunction.from_polynomial(other)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return None
        return RationalFunction.constant(self.registry, c)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        reg = self.registry
        if not o._num:
            return self
        if not self._num:
            return o
        n1, d1 = self._num, self._den
        n2, d2 = o._num, o._den
        n1, n2 = bk.unify(n1, n2, reg)
        d1, d2 = bk.unify(d1, d2, reg)
        n1, d1 = bk.unify(n1, d1, reg)
        n2, d2 = bk.unify(n2, d2, reg)
        if d1 == d2:
            return RationalFunction(reg, n1 + n2, d1)
        if d1.is_ground and d2.is_ground:
            return RationalFunction(reg, n1 * d2 + n2 * d1, d1 * d2)
        g = bk.poly_gcd(d1, d2)
        if g.is_ground:
            num = n1 * d2 + n2 * d1
            if not num:
                return RationalFunction.zero(reg)
            return RationalFunction(reg, *_finish(reg, num, d1 * d2), normalized=True)
        d1g = d1.exquo(g)
        d2g = d2.exquo(g)
        t = n1 * d2g + n2 * d1g
        return RationalFunction(reg, t, d1g * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.registry, -self._num, self._den, normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        reg = self.registry
        if not self._num or not o._num:
            return RationalFunction.zero(reg)
        n1, d1, n2, d2 = self._num, self._den, o._num, o._den
        if o.is_constant:
            c = o.constant_value()
            return self._scale(c)
        if self.is_constant:
            return o._scale(self.constant_value())
        n1, n2 = bk.unify(n1, n2, reg)
        d1, d2 = bk.unify(d1, d2, reg)
        n1, d2 = bk.unify(n1, d2, reg)
        n2, d1 = bk.unify(n2, d1, reg)
        n1, d1 = bk.unify(n1, d1, reg)
        n2, d2 = bk.unify(n2, d2, reg)
        g1 = bk.poly_gcd(n1, d2)
        g2 = bk.poly_gcd(n2, d1)
        if not g1.is_ground:
            n1, d2 = n1.exquo(g1), d2.exquo(g1)
        if not g2.is_ground:
            n2, d1 = n2.exquo(g2), d1.exquo(g2)
        return RationalFunction(reg, *_finish(reg, n1 * n2, d1 * d2), normalized=True)

    __rmul__ = __mul__

    def _scale(self, c: GaussianRational):
        if not c:
            return RationalFunction.zero(self.registry)
        gaussian = (not c.is_real) or self.is_gaussian
        num = self._num
        if gaussian:
            num = bk.to_gaussian(num, self.registry)
        num = num.mul_ground(c.to_domain(gaussian))
        den = self._den
        num, den = bk.unify(num, den, self.registry)
        return RationalFunction(self.registry, *_finish(self.registry, num, den), normalized=True)

    def inverse(self):
        if not self._num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.registry, *_finish(self.registry, self._den, self._num), normalized=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.registry, self._num**k, self._den**k, normalized=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction) and other.registry != self.registry:
            return False
        try:
            o = self._coerce(other)
        except RegistryMismatch:
            return False
        if o is None:
            return NotImplemented
        reg = self.registry
        n1, d2 = bk.unify(self._num, o._den, reg)
        n2, d1 = bk.unify(o._num, self._den, reg)
        a, b = bk.unify(n1 * d2, n2 * d1, reg)
        return a == b

    def __hash__(self):
        return hash((self.registry, str(self)))

    def __bool__(self):
        return bool(self._num)

    # calculus, substitution, evaluation --------------------------------
    def diff(self, name: str) -> "RationalFunction":
        j = self.registry.index(name)
        x = self._num.ring.gens[j]
        dn = self._num.diff(x)
        if self._den.is_ground:
            return RationalFunction(self.registry, dn, self._den, normalized=not dn or True)
        dd = self._den.diff(self._den.ring.gens[j])
        if not dd:
            return RationalFunction(self.registry, dn, self._den)
        # (n/d)' = (n' d - n d') / d^2; cancel the gcd of d and d' first
        g = bk.poly_gcd(self._den, dd)
        dg = self._den.exquo(g) if not g.is_ground else self._den
        ddg = dd.exquo(g) if not g.is_ground else dd
        num = dn * dg - self._num * ddg
        return RationalFunction(self.registry, num, self._den * dg)

    def differentiate(self, name: str) -> "RationalFunction":
        return self.diff(name)

    def evaluate(self, point: Mapping[str, object]) -> GaussianRational:
        d = evaluate_element(self._den, self.registry, point)
        if not d:
            raise PoleError("denominator vanishes at the evaluation point")
        return evaluate_element(self._num, self.registry, point) / d

    def substitute(self, bindings: Mapping[str, object], target: VariableRegistry | None = None):
        """Replace variables by rational functions (a ring homomorphism).

        ``bindings`` maps variable names of this registry to values in the
        target registry (default: this registry).  Unbound variables are
        carried over by name and must exist in the target.
        """
        target = self.registry if target is None else target
        images = {}
        for name, value in bindings.items():
            if name not in self.registry:
                raise KeyError(f"unknown variable {name!r}")
            images[self.registry.index(name)] = RationalFunction.coerce(target, value)
        num, nden = _compose(self._num, self.registry, images, target)
        den, dden = _compose(self._den, self.registry, images, target)
        if not den:
            raise PoleError("substitution makes the denominator vanish")
        top = num * dden
        bottom = den * nden
        top, bottom = bk.unify(top, bottom, target)
        return RationalFunction(target, top, bottom)

    def __str__(self):
        n = bk.format_terms(bk.poly_items(self._num), self.registry.names)
        if self._den.is_ground:
            return n
        d = bk.format_terms(bk.poly_items(self._den), self.registry.names)
        return f"({n})/({d})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _finish(registry, num, den):
    """Normalise leading coefficient and domain of an already reduced pair."""
    num, den = bk.unify(num, den, registry)
    if not num:
        return registry.ring().zero, registry.ring().one
    lc = den.LC
    if lc != den.ring.domain.one:
        num = num.quo_ground(lc)
        den = den.monic() if not den.is_ground else den.ring.one
    num = bk.demote(num, registry)
    den = bk.demote(den, registry)
    return bk.unify(num, den, registry)


def _compose(p, registry, images, target):
    """Evaluate polynomial ``p`` at rational images; returns (P, D) with p = P/D."""
    gaussian = bk.is_gaussian(p) or any(img.is_gaussian for img in images.values())
    ring = target.ring(gaussian)
    nums, dens = {}, {}
    for j, name in enumerate(registry.names):
        if not any(m[j] for m in p.keys()):
            continue
        if j in images:
            img = images[j]
            n, d = img.num_element, img.den_element
        else:
            if name not in target:
                raise KeyError(f"variable {name!r} is missing from the target registry")
            n, d = target.ring().gens[target.index(name)], target.ring().one
        if gaussian:
            n, d = bk.to_gaussian(n, target), bk.to_gaussian(d, target)
        nums[j], dens[j] = n, d
    top_deg = {j: max(m[j] for m in p.keys()) for j in nums if not dens[j].is_ground}
    pow_cache: dict = {}

    def power(kind, j, e):
        key = (kind, j, e)
        v = pow_cache.get(key)
        if v is None:
            base = nums[j] if kind == "n" else dens[j]
            v = base**e
            pow_cache[key] = v
        return v

    domain = ring.domain
    total = ring.zero
    for m, c in p.items():
        if gaussian and not hasattr(c, "y"):
            c = domain.convert(c)
        term = ring.ground_new(c)
        for j in nums:
            e = m[j]
            if e:
                term = term * power("n", j, e)
            if j in top_deg and top_deg[j] - e:
                term = term * power("d", j, top_deg[j] - e)
        total = total + term
    denom = ring.one
    for j, e in top_deg.items():
        denom = denom * power("d", j, e)
    return total, denom
