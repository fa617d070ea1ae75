"""Sparse polynomials in commuting symbols with coefficients in a field.

Used for phase-space functions (coefficients are rational functions of the
positions, symbols are momenta) and for principal symbols of differential
operators.  A polynomial is a ``dict`` from exponent tuples to coefficients.
"""

from __future__ import annotations

from typing import Any, Dict, Tuple

Exp = Tuple[int, ...]
Sparse = Dict[Exp, Any]


def grlex_key(m: Exp):
    return (sum(m), m)


def clean(f: Sparse) -> Sparse:
    return {m: c for m, c in f.items() if c}


def add(f: Sparse, g: Sparse, sign: int = 1) -> Sparse:
    out = dict(f)
    for m, c in g.items():
        if m in out:
            s = out[m] + c if sign > 0 else out[m] - c
            if s:
                out[m] = s
            else:
                del out[m]
        else:
            out[m] = c if sign > 0 else -c
    return out


def mul(f: Sparse, g: Sparse) -> Sparse:
    out: Sparse = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            prod = c1 * c2
            if m in out:
                out[m] = out[m] + prod
            else:
                out[m] = prod
    return clean(out)


def scale(f: Sparse, c) -> Sparse:
    return clean({m: v * c for m, v in f.items()})


def leading(f: Sparse) -> Exp:
    return max(f, key=grlex_key)


def divrem(f: Sparse, g: Sparse) -> tuple[Sparse, Sparse]:
    """Multivariate division by one divisor over the coefficient field.

    Returns ``(q, r)`` with ``f = q*g + r`` and no term of ``r`` divisible by
    the graded-lex leading monomial of ``g``.
    """
    g = clean(g)
    if not g:
        raise ZeroDivisionError("division by zero")
    lm = leading(g)
    lc = g[lm]
    q: Sparse = {}
    r: Sparse = {}
    p = clean(f)
    while p:
        m = leading(p)
        c = p[m]
        if all(a >= b for a, b in zip(m, lm)):
            shift = tuple(a - b for a, b in zip(m, lm))
            t = c / lc
            q = add(q, {shift: t})
            p = add(p, mul({shift: t}, g), sign=-1)
        else:
            r[m] = c
            del p[m]
    return q, r


def degree(f: Sparse) -> int:
    return max((sum(m) for m in f), default=-1)


def homogeneous_part(f: Sparse, k: int) -> Sparse:
    return {m: c for m, c in f.items() if sum(m) == k}
