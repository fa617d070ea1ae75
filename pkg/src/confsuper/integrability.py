"""Integrability conditions for the canonical potential equations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import closure, reference_forms
from .algebra import Polynomial, RationalFunction
from .bd_canonical import CanonicalCoefficients
from .killing import CKTensor

STATE = ("V", "V1", "V2", "V3", "V11")


@dataclass(frozen=True)
class IntegrabilityMatrices:
    """A^(1), A^(2), A^(3) with d_j w = A^(j) w for w = (V, V1, V2, V3, V11)."""

    coefficients: CanonicalCoefficients
    derived: dict
    matrices: tuple

    @property
    def names(self):
        return tuple(self.coefficients.registry.positions)


def derived_entries(c: CanonicalCoefficients, names) -> dict:
    x, y, z = names
    d = {}
    A12, B12, C12, D12 = c.A12, c.B12, c.C12, c.D12
    A13, B13, C13, D13 = c.A13, c.B13, c.C13, c.D13
    A22, B22, C22, D22 = c.A22, c.B22, c.C22, c.D22
    A23, B23, C23, D23 = c.A23, c.B23, c.C23, c.D23
    d["A14"] = A12.diff(y) - A22.diff(x) + B12 * A22 + A12 * A12 - B22 * A12 - C22 * A13 + C12 * A23 - D22
    d["B14"] = B12.diff(y) - B22.diff(x) + A12 * B12 - C22 * B13 + C12 * B23 + D12
    d["C14"] = C12.diff(y) - C22.diff(x) + B12 * C22 + A12 * C12 - B22 * C12 - C22 * C13 + C12 * C23
    d["D14"] = D12.diff(y) - D22.diff(x) + A12 * D12 - B22 * D12 + B12 * D22 + C12 * D23 - C22 * D13
    d["A24"] = A12.diff(x) + B12 * A12 + C12 * A13 + D12
    d["B24"] = B12.diff(x) + B12 * B12 + C12 * B13
    d["C24"] = C12.diff(x) + B12 * C12 + C12 * C13
    d["D24"] = B12 * D12 + C12 * D13 + D12.diff(x)
    d["A34"] = A13.diff(x) + B13 * A12 + C13 * A13 + D13
    d["B34"] = B13.diff(x) + B13 * B12 + C13 * B13
    d["C34"] = C13.diff(x) + B13 * C12 + C13 * C13
    d["D34"] = D13.diff(x) + B13 * D12 + C13 * D13
    return d


def build_matrices(c: CanonicalCoefficients, names=None) -> IntegrabilityMatrices:
    reg = c.registry
    names = tuple(names) if names is not None else tuple(reg.positions)
    d = derived_entries(c, names)
    zero = RationalFunction.zero(reg)
    one = RationalFunction.one(reg)
    g = c.get
    A1 = [
        [zero, one, zero, zero, zero],
        [zero, zero, zero, zero, one],
        [g("D", 1, 2), g("A", 1, 2), g("B", 1, 2), g("C", 1, 2), zero],
        [g("D", 1, 3), g("A", 1, 3), g("B", 1, 3), g("C", 1, 3), zero],
        [d["D14"], d["A14"], d["B14"], d["C14"], c.B12 - c.A22],
    ]
    A2 = [
        [zero, zero, one, zero, zero],
        [g("D", 1, 2), g("A", 1, 2), g("B", 1, 2), g("C", 1, 2), zero],
        [c.D22, c.A22, c.B22, c.C22, one],
        [c.D23, c.A23, c.B23, c.C23, zero],
        [d["D24"], d["A24"], d["B24"], d["C24"], c.A12],
    ]
    A3 = [
        [zero, zero, zero, one, zero],
        [c.D13, c.A13, c.B13, c.C13, zero],
        [c.D23, c.A23, c.B23, c.C23, zero],
        [c.D33, c.A33, c.B33, c.C33, one],
        [d["D34"], d["A34"], d["B34"], d["C34"], c.A13],
    ]
    return IntegrabilityMatrices(c, d, (A1, A2, A3))


def _diff_matrix(M, name):
    return [[e.diff(name) for e in row] for row in M]


def _matmul(P, Q):
    n = len(P)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                if P[i][k] and Q[k][j]:
                    t = P[i][k] * Q[k][j]
                    acc = t if acc is None else acc + t
            row.append(acc if acc is not None else P[0][0] * 0)
        out.append(row)
    return out


def _bracket(P, Q):
    a, b = _matmul(P, Q), _matmul(Q, P)
    return [[u - v for u, v in zip(r1, r2)] for r1, r2 in zip(a, b)]


def obstructions(m: IntegrabilityMatrices):
    """U^1, U^2, U^3 with U^1 = A^(3)_2 - A^(2)_3 - [A^(2), A^(3)] and cyclic permutations."""
    x, y, z = m.names
    A1, A2, A3 = m.matrices

    def U(P, Q, dp, dq):
        # U = Q_dp - P_dq - [P, Q]
        dQ = _diff_matrix(Q, dp)
        dP = _diff_matrix(P, dq)
        br = _bracket(P, Q)
        return [[a - b - c for a, b, c in zip(r1, r2, r3)] for r1, r2, r3 in zip(dQ, dP, br)]

    U1 = U(A2, A3, y, z)
    U2 = U(A3, A1, z, x)
    U3 = U(A1, A2, x, y)
    return (U1, U2, U3)


def obstructions_vanish(m: IntegrabilityMatrices) -> bool:
    return all(not e for U in obstructions(m) for row in U for e in row)


# ---------------------------------------------------------------------------
# ten-function tuples, D closure, derivative closure, flat ideal


TEN_NAMES = ("A12", "A13", "A22", "A23", "A33", "B12", "B22", "B23", "B33", "C33")


class Int11Violation(ValueError):
    """Canonical coefficients that do not obey the algebraic relations."""


@dataclass(frozen=True)
class TenTuple:
    """The ten independent canonical coefficients; the rest follow from the algebraic relations."""

    values: dict

    def __post_init__(self):
        missing = set(TEN_NAMES) - set(self.values)
        if missing:
            raise ValueError(f"missing entries: {sorted(missing)}")

    def __getitem__(self, name):
        if name in self.values:
            return self.values[name]
        v = self.values
        if name in ("B13", "C12"):
            return v["A23"]
        if name == "C13":
            return v["B12"] - v["A22"] + v["A33"]
        if name == "C22":
            return v["B23"] - v["A13"]
        if name == "C23":
            return v["A12"] + v["B33"]
        raise KeyError(name)

    def coefficient(self, letter, i, j):
        i, j = sorted((i, j))
        return self[f"{letter}{i}{j}"]

    @classmethod
    def from_coefficients(cls, c: CanonicalCoefficients, check: bool = True) -> "TenTuple":
        t = cls({n: getattr(c, n) for n in TEN_NAMES})
        if check:
            bad = [n for n in ("B13", "C12", "C13", "C22", "C23") if getattr(c, n) != t[n]]
            if bad:
                raise Int11Violation(f"algebraic relations fail for {bad}")
        return t

    @property
    def registry(self):
        return self.values["A12"].registry


def d_closure(t: TenTuple) -> dict:
    """The five D terms from the tabulated quadratics."""
    return reference_forms.d_quadratics(t.__getitem__)


def evaluate_symbolic(p, values: dict, zero):
    """Evaluate a closure-ring polynomial by plain arithmetic on the given values."""
    reg = p.registry
    out = zero
    for exps, coeff in p.terms():
        term = None
        for j, e in enumerate(exps):
            if e:
                f = values[reg.names[j]] ** e
                term = f if term is None else term * f
        term = zero + 1 if term is None else term
        out = out + term * coeff
    return out


@dataclass(frozen=True)
class DerivativeClosure:
    """d_k F = Q_{F,k}(ten functions) for the ten F and k = 1, 2, 3."""

    equations: dict
    d_terms: dict

    def rhs(self, F: str, k: int, t: TenTuple):
        zero = RationalFunction.zero(t.registry)
        return evaluate_symbolic(self.equations[(F, k)], t.values, zero)

    def residuals(self, t: TenTuple, names=None) -> dict:
        names = tuple(names) if names is not None else tuple(t.registry.positions)
        return {
            (F, k): t[F].diff(names[k - 1]) - self.rhs(F, k, t)
            for F in TEN_NAMES
            for k in (1, 2, 3)
        }


def derivative_closure(t: TenTuple | None = None) -> DerivativeClosure:
    """Derive the 30 derivative equations; ``t`` is accepted for call-site symmetry and unused."""
    cl = closure.derive_closure()
    if cl.residuals:
        raise closure.DerivationInconsistency(cl.residuals)
    return DerivativeClosure(cl.dF, cl.D)


def flat_ideal(t: TenTuple) -> dict:
    return reference_forms.flat_ideal(t.__getitem__)


def is_flat(t: TenTuple) -> bool:
    I = flat_ideal(t)
    return all(not I[k] for k in "abcde")


def sphere_d_terms(t: TenTuple, G_grad, names=None) -> dict:
    """D terms from a logarithmic gradient (G_x, G_y, G_z) of a conformal factor."""
    names = tuple(names) if names is not None else tuple(t.registry.positions)
    G = tuple(G_grad)
    return reference_forms.sphere_d_from_gradient(
        t.coefficient, lambda k: G[k - 1], lambda k, l: G[k - 1].diff(names[l - 1])
    )


def sphere_d_from_ideal(t: TenTuple) -> dict:
    return reference_forms.sphere_d_from_ideal(flat_ideal(t))


def log_gradient(f: RationalFunction, names) -> tuple:
    return tuple(f.diff(n) / f for n in names)


@dataclass
class SymmetryClosureReport:
    """``obstruction`` is the derived algebraic obstruction; ``printed_obstruction`` the tabulated one."""

    violations: dict
    obstruction: object
    second_order: dict
    printed_obstruction: object = None

    @property
    def ok(self) -> bool:
        return not self.violations and not self.obstruction and not any(self.second_order.values())


def symmetry_closure_check(c: CanonicalCoefficients, t: CKTensor, names=None) -> SymmetryClosureReport:
    """Evaluate the fifteen first-derivative equations and the obstructions on a tensor."""
    names = tuple(names) if names is not None else tuple(t.space.positions)
    a = lambda i, j: t[i - 1, j - 1]
    da = lambda i, j, k: t[i - 1, j - 1].diff(names[k - 1])
    dda = lambda i, j, k, l: t[i - 1, j - 1].diff(names[k - 1]).diff(names[l - 1])
    eqs = reference_forms.symmetry_equations(c.get, a, da)
    violations = {label: r for label, r in eqs if r}
    obst = reference_forms.algebraic_obstruction_corrected(c.get, a)
    printed = reference_forms.algebraic_obstruction(c.get, a)
    second = dict(reference_forms.second_order_obstructions(c.get, a, dda))
    return SymmetryClosureReport(violations, obst, second, printed)


# ---------------------------------------------------------------------------
# exact sampling of common zeros


class SamplingFailure(RuntimeError):
    pass


def _random_rational(rng: random.Random) -> Fraction:
    while True:
        n = rng.randint(-9, 9)
        if n:
            return Fraction(n, rng.randint(1, 5))


def _solve_linear(p: RationalFunction, var: str) -> RationalFunction:
    num = p.numerator
    if num.degree(var) != 1:
        raise SamplingFailure(f"condition is not linear in {var}")
    c1 = num.diff(var)
    c0 = num - c1 * Polynomial.variable(num.registry, var)
    if not c1:
        raise SamplingFailure(f"vanishing coefficient for {var}")
    return -RationalFunction.from_polynomial(c0) / RationalFunction.from_polynomial(c1)


def _seq_eliminate(steps, values):
    """Solve each (polynomial, variable) in turn; values may stay symbolic in later variables."""
    for p, var in steps:
        sol = _solve_linear(p.substitute(values), var)
        values = {k: (v.substitute({var: sol}) if isinstance(v, RationalFunction) else v) for k, v in values.items()}
        values[var] = sol
    out = {}
    for k, v in values.items():
        v = RationalFunction.coerce(closure.symbol_registry(), v)
        if not v.is_constant:
            raise SamplingFailure(f"{k} left undetermined")
        out[k] = v.constant_value()
    return out


def sample_ideal_zeros(count: int, seed: int = 0, closed: bool = False) -> list[dict]:
    """Exact rational common zeros of I^(a..e) in the ten symbols.

    With ``closed`` the points also annihilate the first derivatives of
    I^(a..e) along the derivative closure, i.e. they are values of a flat
    system at a regular point rather than isolated zeros of five quadratics.
    One derivative condition (linear in A22) is imposed; the rest are checked.
    """
    rng = random.Random(seed)
    I = closure.flat_ideal_symbolic()
    conds = closure.flat_derivative_conditions()
    free = ["A12", "A13", "A23", "A33", "B12", "B23"] + ([] if closed else ["A22"])
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 20 * count + 20:
            raise SamplingFailure("too many degenerate draws")
        values = {n: _random_rational(rng) for n in free}
        steps = [(I["d"], "B33")]
        if closed:
            # B22 and C33 stay linear in A22; the derivative condition then fixes A22
            steps += [(I["a"], "B22"), (I["e"], "C33"), (conds[("e", 1)], "A22")]
        else:
            steps += [(I["a"], "B22"), (I["e"], "C33")]
        try:
            pt = _seq_eliminate(steps, values)
        except SamplingFailure:
            continue
        if any(I[k].evaluate(pt) for k in "abcde"):
            raise SamplingFailure("elimination produced a non-zero of the ideal")
        if closed and any(c.evaluate(pt) for c in conds.values()):
            raise SamplingFailure("closure conditions not met at a closed sample")
        points.append(pt)
    return points


def sixth_generator_values(points) -> list:
    I = closure.flat_ideal_symbolic()
    return [I["f"].evaluate(p) for p in points]
