"""Conformal Stackel transform: conformal Laplace systems to Helmholtz systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import sympy
from sympy.integrals.rationaltools import ratint

from .algebra import RationalFunction, linalg
from .algebra.sympy_bridge import from_sympy, symbols_for, to_sympy
from .bd_canonical import CanonicalCoefficients, canonical_residuals
from .killing import CKTensor
from .phase_space import (
    ClassicalHamiltonian,
    PhaseFunction,
    is_conformal_symmetry,
    poisson_bracket,
)


class InadmissiblePotential(ValueError):
    """U is not a member of the source system's potential space."""


class NonClosedGradient(ValueError):
    """The prescribed gradient field for W is not closed."""


class LogarithmicObstruction(ValueError):
    """The antiderivative of the gradient field is not rational."""


class TransformVerificationError(ArithmeticError):
    """A transformed symmetry failed to commute with the Helmholtz Hamiltonian."""


def default_anchor(names) -> dict:
    """Fixed regular anchor point for normalising W; off every coordinate plane and unit sphere."""
    return dict(zip(names, (3, 5, 7)[: len(names)]))


def w_gradient(t: CKTensor, U: RationalFunction, metric_factor=None, multiplier: PhaseFunction | None = None):
    """Components W_k of the gradient a potential U forces on the symmetry with tensor t.

    For flat metric this is W_k = sum_s a^{sk} U_s + a^{kk}_k U.  In general
    W_k = lam (sum_s a^{sk} U_s + b_k U / 2) with b the conformal multiplier.
    """
    space = t.space
    names = space.positions
    n = len(names)
    reg = space.registry
    U = RationalFunction.coerce(reg, U)
    lam = RationalFunction.one(reg) if metric_factor is None else RationalFunction.coerce(reg, metric_factor)
    if multiplier is None:
        if lam != RationalFunction.one(reg):
            H0 = space.free_kinetic() / lam
            multiplier = is_conformal_symmetry(t.to_phase_function(), H0)
            if multiplier is None:
                raise ValueError("tensor is not conformal for the given metric")
            half_b = [multiplier.coefficient(tuple(1 if j == k else 0 for j in range(n))) / 2 for k in range(n)]
        else:
            half_b = [t[k, k].diff(names[k]) for k in range(n)]
    else:
        half_b = [multiplier.coefficient(tuple(1 if j == k else 0 for j in range(n))) / 2 for k in range(n)]
    grad = [U.diff(x) for x in names]
    out = []
    for k in range(n):
        acc = half_b[k] * U
        for s in range(n):
            acc = acc + t[s, k] * grad[s]
        out.append(lam * acc)
    return tuple(out)


def _check_closed(W, names):
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            d = W[i].diff(names[j]) - W[j].diff(names[i])
            if d:
                raise NonClosedGradient(f"d{names[j]} W_{i + 1} - d{names[i]} W_{j + 1} = {d}")


def _integrate(expr, var):
    res = ratint(sympy.cancel(expr), var)
    if res.has(sympy.log) or res.has(sympy.atan) or res.has(sympy.RootSum):
        raise LogarithmicObstruction(f"antiderivative in {var} is not rational")
    return res


def antiderivative(grad: Sequence[RationalFunction], names, anchor: Mapping | None = None) -> RationalFunction:
    """Rational potential function W with dW/dx_k = grad[k], normalised W(anchor) = 0."""
    names = tuple(names)
    reg = grad[0].registry
    _check_closed(grad, names)
    syms = symbols_for(reg)
    G = [to_sympy(g) for g in grad]
    W = sympy.Integer(0)
    for k, x in enumerate(names):
        rest = sympy.cancel(G[k] - sympy.diff(W, syms[x]))
        for earlier in names[:k]:
            if sympy.diff(rest, syms[earlier]) != 0:
                raise NonClosedGradient("gradient field is not closed")
        if rest != 0:
            W = W + _integrate(rest, syms[x])
    result = from_sympy(W, reg)
    for k, x in enumerate(names):
        if result.diff(x) != grad[k]:
            raise ArithmeticError("antiderivative failed the gradient check")
    anchor = default_anchor(names) if anchor is None else anchor
    return result - result.evaluate(anchor)


def integrate_W(t: CKTensor, U, metric_factor=None, anchor=None, multiplier=None) -> RationalFunction:
    grad = w_gradient(t, U, metric_factor, multiplier)
    return antiderivative(grad, t.space.positions, anchor)


@dataclass(frozen=True)
class StackelTransformRecord:
    source: ClassicalHamiltonian
    special: RationalFunction
    metric_factor: RationalFunction
    potential: RationalFunction
    W: dict = field(default_factory=dict)

    @property
    def target(self) -> ClassicalHamiltonian:
        s = self.source
        return ClassicalHamiltonian(s.space, self.potential, self.metric_factor, s.kinetic)


def potential_space(H: ClassicalHamiltonian, parameters: Sequence[str] | None = None):
    """Basis of the potential space of H: the parameter derivatives of its potential."""
    V = H.potential
    reg = H.space.registry
    parameters = tuple(parameters) if parameters is not None else tuple(reg.parameters)
    basis = [V.diff(a) for a in parameters if V.depends_on(a)]
    base = V.substitute({a: 0 for a in parameters})
    if base:
        basis.append(base)
    return basis


def is_admissible(H: ClassicalHamiltonian, U, coefficients: CanonicalCoefficients | None = None, points=None) -> bool:
    """U lies in the potential space of H (or solves its canonical equations when coefficients are given)."""
    reg = H.space.registry
    U = RationalFunction.coerce(reg, U)
    if coefficients is not None:
        return all(not r for r in canonical_residuals(coefficients, U, H.space.positions).values())
    basis = potential_space(H)
    if not basis:
        return False
    names = H.space.positions
    points = points or [dict(zip(names, pt)) for pt in ((2, 3, 5), (3, 7, 2), (5, 2, 11), (7, 13, 3), (11, 5, 17), (13, 17, 7))]
    rows = [[f.evaluate(pt) for f in basis] for pt in points]
    rhs = [[U.evaluate(pt)] for pt in points]
    sol = linalg.solve(rows, rhs, 0)
    if not sol.consistent:
        return False
    combo = RationalFunction.zero(reg)
    for f, v in zip(basis, sol.values):
        combo = combo + f * v[0]
    return combo == U


def stackel_transform(
    H: ClassicalHamiltonian,
    U,
    coefficients: CanonicalCoefficients | None = None,
    check_admissible: bool = True,
) -> StackelTransformRecord:
    reg = H.space.registry
    U = RationalFunction.coerce(reg, U)
    if U.is_zero:
        raise InadmissiblePotential("U vanishes identically")
    if any(U.depends_on(a) for a in reg.names if a not in H.space.positions):
        raise InadmissiblePotential("U must depend on positions only")
    if check_admissible and not is_admissible(H, U, coefficients):
        raise InadmissiblePotential("U is not in the source potential space")
    return StackelTransformRecord(H, U, H.metric_factor * U, H.potential / U)


def transform_symmetry(S: PhaseFunction, rec: StackelTransformRecord, name: str | None = None,
                       verify: bool = True) -> PhaseFunction:
    """S - (W_U / U) H for a second order conformal symmetry; first order ones map to themselves."""
    H = rec.source
    Hf = H.function
    if is_conformal_symmetry(S, Hf) is None:
        raise ValueError("S is not a conformal symmetry of the source")
    if S.degree() == 1:
        out = S
    else:
        S0 = S.homogeneous_part(2)
        b = is_conformal_symmetry(S0, H.kinetic / H.metric_factor)
        t = CKTensor.from_phase_function(S0)
        W = integrate_W(t, rec.special, H.metric_factor, multiplier=b)
        if name is not None:
            rec.W[name] = W
        out = S - Hf * (W / rec.special)
    if verify:
        br = poisson_bracket(out, rec.target.function)
        if not br.is_zero:
            raise TransformVerificationError(f"{{S~, H~}} = {br}")
    return out


def canonical_coefficients_transform(c: CanonicalCoefficients, special: RationalFunction, names=None) -> CanonicalCoefficients:
    """Coefficients of the equations satisfied by V / special, given those for V."""
    names = tuple(names) if names is not None else tuple(c.registry.positions)
    reg = c.registry
    special = RationalFunction.coerce(reg, special)
    g = [special.diff(x) / special for x in names]
    zero = RationalFunction.zero(reg)
    shift = {
        "A33": 2 * g[0], "B33": zero, "C33": -2 * g[2],
        "A22": 2 * g[0], "B22": -2 * g[1], "C22": zero,
        "A12": -g[1], "B12": -g[0], "C12": zero,
        "A13": -g[2], "B13": zero, "C13": -g[0],
        "A23": zero, "B23": -g[2], "C23": -g[1],
    }
    values = {}
    for k, v in c.as_dict().items():
        if k[0] == "D":
            # the special solution annihilates the V terms
            values[k] = _transformed_d(c, special, k, names)
        else:
            values[k] = v + shift[k]
    return CanonicalCoefficients.from_mapping(values)


def _transformed_d(c, special, key, names):
    pair = key[1:]
    D, A, B, C = c.first_derivative_row(pair)
    g = [special.diff(x) for x in names]
    i, j = int(pair[0]), int(pair[1])
    if i == j:
        lhs = special.diff(names[i - 1]).diff(names[i - 1]) - special.diff(names[0]).diff(names[0])
    else:
        lhs = special.diff(names[i - 1]).diff(names[j - 1])
    # writing V = special * W, the V term of the equation for W is (A U_1 + B U_2 + C U_3 + D U - U_ij) / U
    return (A * g[0] + B * g[1] + C * g[2] + D * special - lhs) / special
