"""Helpers over sympy's sparse PolyElement: domain switching, gcd, printing."""

from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I

from .gaussian import GaussianRational


def is_gaussian(p) -> bool:
    return p.ring.domain == QQ_I


def to_gaussian(p, registry):
    if is_gaussian(p):
        return p
    ring = registry.ring(True)
    out = ring.zero.copy()
    for m, c in p.items():
        out[m] = QQ_I(c, 0)
    return out


def demote(p, registry):
    """Move a QQ_I polynomial into the QQ ring when every coefficient is real."""
    if not is_gaussian(p):
        return p
    for c in p.values():
        if c.y:
            return p
    ring = registry.ring(False)
    out = ring.zero.copy()
    for m, c in p.items():
        out[m] = c.x
    return out


def unify(a, b, registry):
    ga, gb = is_gaussian(a), is_gaussian(b)
    if ga == gb:
        return a, b
    return to_gaussian(a, registry), to_gaussian(b, registry)


def scalar_to_domain(value: GaussianRational, gaussian: bool):
    return value.to_domain(gaussian)


def coeff_to_gaussian(c) -> GaussianRational:
    if hasattr(c, "y") and hasattr(c, "x"):
        return GaussianRational(_f(c.x), _f(c.y))
    return GaussianRational(_f(c))


def _f(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def is_monomial(p) -> bool:
    return len(p) == 1


def monomial_gcd(p, q):
    """Gcd of two polynomials when at least one is a single term."""
    ring = p.ring
    exps = None
    for m in list(p.keys()) + list(q.keys()):
        exps = list(m) if exps is None else [min(a, b) for a, b in zip(exps, m)]
    out = ring.zero.copy()
    out[tuple(exps)] = ring.domain.one
    return out


def poly_gcd(p, q):
    if p.is_ground or q.is_ground:
        return p.ring.one
    if is_monomial(p) or is_monomial(q):
        return monomial_gcd(p, q)
    return p.gcd(q)


def grlex_key(m):
    return (sum(m), m)


def format_scalar(c: GaussianRational) -> str:
    return str(c)


def format_terms(items, names) -> str:
    """Render (exponent-tuple, GaussianRational) pairs in descending grlex order."""
    items = sorted(items, key=lambda t: grlex_key(t[0]), reverse=True)
    if not items:
        return "0"
    parts = []
    for k, (m, c) in enumerate(items):
        mono = "*".join(
            (names[j] if e == 1 else f"{names[j]}^{e}") for j, e in enumerate(m) if e
        )
        if c.im == 0:
            neg = c.re < 0
            mag = -c.re if neg else c.re
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if neg else "+"
        else:
            sign = "+"
            cs = str(c)
            if c.re == 0 and c.im < 0:
                sign = "-"
                cs = str(-c)
            if mono:
                body = f"{cs}*{mono}" if cs not in ("i",) else f"i*{mono}"
            else:
                body = cs
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def poly_items(p):
    return [(m, coeff_to_gaussian(c)) for m, c in p.items()]
