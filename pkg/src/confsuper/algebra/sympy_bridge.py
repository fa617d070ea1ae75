"""Conversion between RationalFunction and sympy expressions."""

from __future__ import annotations

from fractions import Fraction

import sympy

from .gaussian import GaussianRational
from .polynomial import Polynomial
from .rational import RationalFunction
from .registry import VariableRegistry


def symbols_for(registry: VariableRegistry) -> dict:
    return {n: sympy.Symbol(n) for n in registry.names}


def _poly_to_sympy(p: Polynomial, syms):
    names = p.registry.names
    out = sympy.Integer(0)
    for exps, c in p.terms():
        coeff = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
        term = coeff
        for j, e in enumerate(exps):
            if e:
                term *= syms[names[j]] ** e
        out += term
    return out


def to_sympy(f: RationalFunction):
    syms = symbols_for(f.registry)
    return _poly_to_sympy(f.numerator, syms) / _poly_to_sympy(f.denominator, syms)


def _scalar(c) -> GaussianRational:
    re, im = sympy.re(c), sympy.im(c)
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _poly_from_sympy(expr, registry: VariableRegistry) -> Polynomial:
    syms = [sympy.Symbol(n) for n in registry.names]
    poly = sympy.Poly(sympy.expand(expr), *syms, domain="QQ_I" if expr.has(sympy.I) else "QQ")
    terms = {}
    for monom, c in poly.terms():
        terms[tuple(monom)] = _scalar(sympy.nsimplify(poly.domain.to_sympy(c)))
    return Polynomial.from_terms(registry, terms)


def from_sympy(expr, registry: VariableRegistry) -> RationalFunction:
    """Exact conversion; raises ValueError for non-rational expressions."""
    expr = sympy.together(sympy.sympify(expr))
    known = {sympy.Symbol(n) for n in registry.names}
    if not expr.free_symbols <= known:
        raise ValueError(f"unknown symbols {expr.free_symbols - known}")
    num, den = sympy.fraction(expr)
    if not (num.is_polynomial(*known) and den.is_polynomial(*known)):
        raise ValueError("expression is not rational")
    return RationalFunction.from_polynomials(_poly_from_sympy(num, registry), _poly_from_sympy(den, registry))
