"""Symbolic derivation of the closure system for nondegenerate Laplace systems.

Everything here lives in a polynomial ring whose variables are *symbols* for
the canonical coefficients, the components of a conformal Killing tensor in
the gauge a^11 = 0, their derivatives, and the jet (V, V1, V2, V3, V11).
The derivation follows the route: Bertrand-Darboux equations with the
canonical substitution, plus the Killing equations, give every first
derivative of the tensor; integrability of that system, with the tensor
values arbitrary at a point, then fixes the derivatives of the ten
independent coefficients and the five D terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import reference_forms
from .algebra import Polynomial, VariableRegistry, linalg

TEN = ("A12", "A13", "A22", "A23", "A33", "B12", "B22", "B23", "B33", "C33")
DEPENDENT = ("B13", "C12", "C13", "C22", "C23")
D_NAMES = ("D12", "D13", "D22", "D23", "D33")
COMPONENTS = ("22", "33", "12", "13", "23")  # gauge a^11 = 0, so a^22, a^33 are reduced variables
JETS = ("V", "V1", "V2", "V3", "V11")


class DerivationInconsistency(ArithmeticError):
    """The closure equations are inconsistent; carries the offending residuals."""

    def __init__(self, residuals):
        self.residuals = list(residuals)
        super().__init__(f"{len(self.residuals)} inconsistent closure equations")


def _first(c, k):
    return f"da{c}_{k}"


def _second(c, k, l):
    k, l = sorted((k, l))
    return f"da{c}_{k}{l}"


def _dF(F, k):
    return f"d{F}_{k}"


@lru_cache(maxsize=None)
def symbol_registry() -> VariableRegistry:
    names = list(TEN) + list(DEPENDENT) + list(D_NAMES)
    names += [f"u{c}" for c in COMPONENTS]
    names += [_first(c, k) for c in COMPONENTS for k in (1, 2, 3)]
    names += [_second(c, k, l) for c in COMPONENTS for k in (1, 2, 3) for l in (1, 2, 3) if k <= l]
    names += [_dF(F, k) for F in TEN for k in (1, 2, 3)]
    names += list(JETS)
    return VariableRegistry.build(auxiliary=names)


def sym(name: str) -> Polynomial:
    return Polynomial.variable(symbol_registry(), name)


def int11_bindings() -> dict:
    """Algebraic relations among the canonical coefficients (no derivatives)."""
    s = sym
    return {
        "B13": s("A23"),
        "C12": s("A23"),
        "C13": s("B12") - s("A22") + s("A33"),
        "C22": s("B23") - s("A13"),
        "C23": s("A12") + s("B33"),
    }


def apply_int11(p: Polynomial) -> Polynomial:
    return p.substitute(int11_bindings()).as_polynomial()


# ---------------------------------------------------------------------------
# tensor symbols in the gauge a^11 = 0


def _comp(i, j):
    i, j = sorted((i, j))
    return f"{i}{j}"


def a_val(i, j) -> Polynomial:
    c = _comp(i, j)
    return Polynomial.zero(symbol_registry()) if c == "11" else sym(f"u{c}")


def a_d(i, j, k) -> Polynomial:
    c = _comp(i, j)
    return Polynomial.zero(symbol_registry()) if c == "11" else sym(_first(c, k))


def a_dd(i, j, k, l) -> Polynomial:
    c = _comp(i, j)
    return Polynomial.zero(symbol_registry()) if c == "11" else sym(_second(c, k, l))


def coeff_sym(letter, i, j) -> Polynomial:
    i, j = sorted((i, j))
    return sym(f"{letter}{i}{j}")


def bd_jet_coefficients():
    """For each BD pair (l, j), the coefficients of V, V1, V2, V3, V11 after the canonical substitution."""
    zero = Polynomial.zero(symbol_registry())
    out = {}
    for l, j in ((1, 2), (1, 3), (2, 3)):
        c = {}

        def add(key, val):
            c[key] = c.get(key, zero) + val

        for s in (1, 2, 3):
            add(("V2", s, j), a_val(s, l))
            add(("V2", s, l), -a_val(s, j))
            add(("V1", s), a_d(s, l, j) - a_d(s, j, l))
        add(("V1", j), a_d(l, l, l))
        add(("V1", l), -a_d(j, j, j))
        add(("V0",), a_dd(l, l, j, l) - a_dd(j, j, j, l))
        jet = {k: zero for k in JETS}
        for key, val in c.items():
            if key[0] == "V1":
                jet[f"V{key[1]}"] = jet[f"V{key[1]}"] + val
            elif key[0] == "V0":
                jet["V"] = jet["V"] + val
            else:
                p, q = sorted(key[1:])
                if (p, q) == (1, 1):
                    jet["V11"] = jet["V11"] + val
                    continue
                if p == q:
                    # V_pp = V11 + A^pp V1 + B^pp V2 + C^pp V3 + D^pp V
                    jet["V11"] = jet["V11"] + val
                else:
                    pass
                jet["V1"] = jet["V1"] + val * coeff_sym("A", p, q)
                jet["V2"] = jet["V2"] + val * coeff_sym("B", p, q)
                jet["V3"] = jet["V3"] + val * coeff_sym("C", p, q)
                jet["V"] = jet["V"] + val * coeff_sym("D", p, q)
        out[(l, j)] = jet
    return out


def killing_equations() -> list[Polynomial]:
    """a^jj_j - a^ii_j - 2 a^ij_i = 0 for i != j, and the cyclic equation."""
    eqs = []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i != j:
                eqs.append(a_d(j, j, j) - a_d(i, i, j) - 2 * a_d(i, j, i))
    eqs.append(a_d(1, 2, 3) + a_d(1, 3, 2) + a_d(2, 3, 1))
    return eqs


def _linear_system(equations, unknowns):
    """Split linear equations into a constant matrix and a polynomial right-hand side."""
    reg = symbol_registry()
    rows, rhs = [], []
    for e in equations:
        row = []
        rest = e
        for u in unknowns:
            coeff = e.diff(u)
            if not coeff.is_constant:
                raise ValueError(f"coefficient of {u} is not constant: {coeff}")
            c = coeff.constant_value()
            row.append(c)
            if c:
                rest = rest - sym(u) * c
        rows.append(row)
        rhs.append([-rest])
    return rows, rhs


@dataclass
class SymmetrySystem:
    """First derivatives of the gauged tensor components as polynomials."""

    first: dict
    leftover: list


def derive_symmetry_system(use_int11: bool = False) -> SymmetrySystem:
    jets = bd_jet_coefficients()
    eqs = []
    for pair, jet in jets.items():
        if jet["V11"]:
            raise AssertionError("V11 does not cancel")
        for v in ("V1", "V2", "V3"):
            eqs.append(jet[v])
    eqs += killing_equations()
    unknowns = [_first(c, k) for c in COMPONENTS for k in (1, 2, 3)]
    rows, rhs = _linear_system(eqs, unknowns)
    sol = linalg.solve(rows, rhs, Polynomial.zero(symbol_registry()))
    if not sol.unique:
        raise AssertionError("symmetry derivatives are not uniquely determined")
    first = {u: sol.values[k][0] for k, u in enumerate(unknowns)}
    leftover = [r[0] for r in sol.residuals if r[0]]
    if use_int11:
        first = {k: apply_int11(v) for k, v in first.items()}
        leftover = [p for p in (apply_int11(v) for v in leftover) if p]
    return SymmetrySystem(first, leftover)


def _total_derivative(p: Polynomial, k: int, first: dict, dF: dict | None) -> Polynomial:
    """d/dx_k of a polynomial in tensor values and the ten functions."""
    out = Polynomial.zero(symbol_registry())
    for c in COMPONENTS:
        coeff = p.diff(f"u{c}")
        if coeff:
            out = out + coeff * first[_first(c, k)]
    for F in TEN:
        coeff = p.diff(F)
        if coeff:
            out = out + coeff * (sym(_dF(F, k)) if dF is None else dF[(F, k)])
    return out


@dataclass
class ClosureSystem:
    """Derived closure: dF[(F, k)] and D[name] as quadratics in the ten functions."""

    dF: dict
    D: dict
    rank: int
    residuals: list
    symmetry: SymmetrySystem

    @property
    def consistent(self) -> bool:
        return not self.residuals


def _split_by_tensor(p: Polynomial) -> list[Polynomial]:
    """Coefficients of the tensor values u_c in an expression linear in them."""
    out = []
    for c in COMPONENTS:
        coeff = p.diff(f"u{c}")
        out.append(coeff)
    rest = p.substitute({f"u{c}": 0 for c in COMPONENTS}).as_polynomial()
    if rest:
        out.append(rest)
    return out


@lru_cache(maxsize=None)
def derive_closure() -> ClosureSystem:
    sysm = derive_symmetry_system(use_int11=True)
    if sysm.leftover:
        raise AssertionError("obstruction survives the algebraic relations")
    first = sysm.first
    equations = []
    # mixed partials of the tensor components
    for c in COMPONENTS:
        for k, l in combinations((1, 2, 3), 2):
            e = _total_derivative(first[_first(c, k)], l, first, None) - _total_derivative(
                first[_first(c, l)], k, first, None
            )
            equations += [q for q in _split_by_tensor(e) if q]
    # coefficients of V in the BD equations
    second = {}
    for c in COMPONENTS:
        for k in (1, 2, 3):
            for l in (1, 2, 3):
                if k <= l:
                    second[_second(c, k, l)] = _total_derivative(first[_first(c, k)], l, first, None)
    for pair, jet in bd_jet_coefficients().items():
        e = apply_int11(jet["V"].substitute(second).as_polynomial())
        equations += [q for q in _split_by_tensor(e) if q]
    unknowns = [_dF(F, k) for F in TEN for k in (1, 2, 3)] + list(D_NAMES)
    rows, rhs = _linear_system(equations, unknowns)
    sol = linalg.solve(rows, rhs, Polynomial.zero(symbol_registry()))
    residuals = [r[0] for r in sol.residuals if r[0]]
    values = {u: sol.values[k][0] for k, u in enumerate(unknowns)}
    dF = {(F, k): values[_dF(F, k)] for F in TEN for k in (1, 2, 3)}
    D = {n: values[n] for n in D_NAMES}
    if sol.free_columns:
        free = [unknowns[k] for k in sol.free_columns]
        raise AssertionError(f"closure unknowns not determined: {free}")
    return ClosureSystem(dF, D, sol.rank, residuals, sysm)


def mixed_partial_defects(closure: ClosureSystem) -> dict:
    """d_l(dF_k) - d_k(dF_l) with the derived system substituted; all should vanish."""
    out = {}
    for F in TEN:
        for k, l in combinations((1, 2, 3), 2):
            e = _total_derivative(closure.dF[(F, k)], l, {}, closure.dF) - _total_derivative(
                closure.dF[(F, l)], k, {}, closure.dF
            )
            out[(F, k, l)] = e
    return out


def coefficient_accessor(reduced: bool):
    bind = int11_bindings()

    def C(letter, i, j):
        i, j = sorted((i, j))
        name = f"{letter}{i}{j}"
        if reduced and name in bind:
            return bind[name]
        return sym(name)

    return C


def tabulated_symmetry_defects() -> dict:
    """Tabulated first-derivative equations minus the derived ones; zero polynomials when they agree."""
    first = derive_symmetry_system(use_int11=True).first
    reg = symbol_registry()

    def da(i, j, k):
        c = _comp(i, j)
        return Polynomial.zero(reg) if c == "11" else first[_first(c, k)]

    eqs = reference_forms.symmetry_equations(coefficient_accessor(True), a_val, da)
    return {label: apply_int11(p) for label, p in eqs}


def obstruction_after_relations(corrected: bool = False) -> Polynomial:
    """The algebraic obstruction with the relations substituted, as a polynomial in the ten symbols."""
    form = reference_forms.algebraic_obstruction_corrected if corrected else reference_forms.algebraic_obstruction
    return apply_int11(form(coefficient_accessor(False), a_val))


def derived_obstruction() -> Polynomial:
    """The single equation left over when the symmetry derivatives are solved for, before the relations."""
    left = derive_symmetry_system(use_int11=False).leftover
    return left[0] if left else Polynomial.zero(symbol_registry())


def second_order_defects() -> dict:
    """Tabulated D obstructions minus their values on the derived closure."""
    cl = derive_closure()
    first = cl.symmetry.first
    reg = symbol_registry()

    def dda(i, j, k, l):
        c = _comp(i, j)
        if c == "11":
            return Polynomial.zero(reg)
        g = _total_derivative(first[_first(c, k)], l, first, cl.dF)
        return g

    bind = int11_bindings()

    def C(letter, i, j):
        i, j = sorted((i, j))
        name = f"{letter}{i}{j}"
        if letter == "D":
            return cl.D[name]
        return bind.get(name, sym(name))

    return {label: apply_int11(p) for label, p in reference_forms.second_order_obstructions(C, a_val, dda)}


def total_derivative(p: Polynomial, k: int) -> Polynomial:
    """d/dx_k of a polynomial in the ten functions, using the derived closure."""
    return _total_derivative(p, k, {}, derive_closure().dF)


def flat_ideal_symbolic() -> dict:
    return reference_forms.flat_ideal(sym)


def flat_derivative_conditions() -> dict:
    """First derivatives of I^(a..e) along the closure, keyed (label, k)."""
    I = flat_ideal_symbolic()
    return {(key, k): total_derivative(I[key], k) for key in "abcde" for k in (1, 2, 3)}
