"""Bertrand-Darboux equations, canonical second-derivative equations for the
potential, and their power-series solution at a regular point."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from itertools import product
from typing import Mapping, Sequence

from .algebra import GaussianRational, RationalFunction, linalg
from .algebra.registry import RegistryMismatch
from .killing import CKTensor
from .phase_space import PhaseFunction, PhaseSpace

# jet symbols, V_ij with i <= j using 1-based indices
JET_SYMBOLS = ("V", "V1", "V2", "V3", "V11", "V22", "V33", "V12", "V13", "V23")
# unknown vector of the stacked system: (V33-V11, V22-V11, V12, V23, V13)
UNKNOWNS = ("V33-V11", "V22-V11", "V12", "V32", "V31")
PAIRS = ("33", "22", "12", "23", "13")
BD_INDEX_PAIRS = ((1, 2), (1, 3), (2, 3))


def _second(i: int, j: int) -> str:
    i, j = sorted((i, j))
    return f"V{i}{j}"


@dataclass(frozen=True)
class BDEquation:
    """sum over jet symbols of coefficient * symbol = 0, for one index pair (l, j)."""

    pair: tuple[int, int]
    coefficients: dict

    def coefficient(self, symbol: str):
        return self.coefficients[symbol]


def build_bd_equations(t: CKTensor) -> list[BDEquation]:
    """The three Bertrand-Darboux equations of a conformal Killing tensor."""
    space = t.space
    if space.dim != 3:
        raise ValueError("Bertrand-Darboux assembly is implemented for three dimensions")
    names = space.positions
    a = t.a
    reg = space.registry
    zero = RationalFunction.zero(reg)

    def d(f, k):
        return f.diff(names[k - 1])

    def A(i, j):
        return a[i - 1][j - 1]

    out = []
    for l, j in BD_INDEX_PAIRS:
        c = {s: zero for s in JET_SYMBOLS}
        for s in (1, 2, 3):
            c[_second(s, j)] = c[_second(s, j)] + A(s, l)
            c[_second(s, l)] = c[_second(s, l)] - A(s, j)
            c[f"V{s}"] = c[f"V{s}"] + d(A(s, l), j) - d(A(s, j), l)
        c[f"V{j}"] = c[f"V{j}"] + d(A(l, l), l)
        c[f"V{l}"] = c[f"V{l}"] - d(A(j, j), j)
        c["V"] = c["V"] + d(d(A(l, l), j), l) - d(d(A(j, j), j), l)
        out.append(BDEquation((l, j), c))
    return out


def bd_residual(t: CKTensor, V: RationalFunction) -> list[RationalFunction]:
    """Evaluate the three BD equations on an explicit potential."""
    names = t.space.positions
    jets = {"V": V}
    for i in range(3):
        jets[f"V{i + 1}"] = V.diff(names[i])
    for i in range(3):
        for j in range(i, 3):
            jets[_second(i + 1, j + 1)] = jets[f"V{i + 1}"].diff(names[j])
    out = []
    for eq in build_bd_equations(t):
        total = RationalFunction.zero(t.space.registry)
        for s, c in eq.coefficients.items():
            if c:
                total = total + c * jets[s]
        out.append(total)
    return out


@dataclass(frozen=True)
class BDSystem:
    """Stacked system B v = b; rows of b are coefficient vectors over (V1, V2, V3, V)."""

    space: PhaseSpace
    matrix: list
    rhs: list
    labels: list


def assemble_system(tensors: Sequence[CKTensor]) -> BDSystem:
    if not tensors:
        raise ValueError("at least one tensor is required")
    space = tensors[0].space
    rows, rhs, labels = [], [], []
    for k, t in enumerate(tensors):
        if t.space != space:
            raise RegistryMismatch("tensors over different spaces")
        for eq in build_bd_equations(t):
            c = eq.coefficients
            if c["V11"] + c["V22"] + c["V33"]:
                raise ValueError("BD equation is not expressible in the reduced unknowns")
            rows.append([c["V33"], c["V22"], c["V12"], c["V23"], c["V13"]])
            rhs.append([-c["V1"], -c["V2"], -c["V3"], -c["V"]])
            labels.append((k, eq.pair))
    return BDSystem(space, rows, rhs, labels)


_COEFF_NAMES = tuple(f"{L}{p}" for p in ("22", "33", "12", "13", "23") for L in "ABCD")


@dataclass(frozen=True)
class CanonicalCoefficients:
    """Coefficients of V_ij (and V_ii - V_11) in terms of V_1, V_2, V_3, V.

    Fields are named ``A22 .. D23``; ``get('A', 3, 2)`` gives symmetric access
    and ``get('B', 1, 4)`` style names are deliberately unsupported here.
    """

    A22: RationalFunction
    B22: RationalFunction
    C22: RationalFunction
    D22: RationalFunction
    A33: RationalFunction
    B33: RationalFunction
    C33: RationalFunction
    D33: RationalFunction
    A12: RationalFunction
    B12: RationalFunction
    C12: RationalFunction
    D12: RationalFunction
    A13: RationalFunction
    B13: RationalFunction
    C13: RationalFunction
    D13: RationalFunction
    A23: RationalFunction
    B23: RationalFunction
    C23: RationalFunction
    D23: RationalFunction

    @classmethod
    def from_mapping(cls, values: Mapping[str, RationalFunction]) -> "CanonicalCoefficients":
        return cls(**{n: values[n] for n in _COEFF_NAMES})

    def get(self, letter: str, i: int, j: int) -> RationalFunction:
        i, j = sorted((i, j))
        return getattr(self, f"{letter}{i}{j}")

    def as_dict(self) -> dict[str, RationalFunction]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def registry(self):
        return self.A22.registry

    def first_derivative_row(self, pair: str):
        """(D, A, B, C) for a pair such as '12'."""
        return tuple(getattr(self, f"{L}{pair}") for L in "DABC")


@dataclass(frozen=True)
class CanonicalSolution:
    coefficients: CanonicalCoefficients | None
    rank: int
    residual_conditions: list
    classification: str = ""


def _from_unknown_solution(values) -> CanonicalCoefficients:
    # values[k] = coefficient vector over (V1, V2, V3, V) for unknown k
    m = {}
    for pair, vec in zip(PAIRS, values):
        for L, e in zip("ABCD", vec):
            m[f"{L}{pair}"] = e
    return CanonicalCoefficients.from_mapping(m)


def solve_canonical(system: BDSystem) -> CanonicalSolution:
    """Solve the stacked BD system for the canonical coefficients.

    The solution is unique when the 12x5 matrix has rank five.  Residual
    conditions collect leftover rows: linear combinations of V1, V2, V3, V
    that any admissible potential would additionally have to satisfy.
    """
    zero = RationalFunction.zero(system.space.registry)
    sol = linalg.solve(system.matrix, system.rhs, zero)
    residual = [row for row in sol.residuals if any(row)]
    if sol.rank < 5:
        return CanonicalSolution(None, sol.rank, residual, "underdetermined")
    coeffs = _from_unknown_solution(sol.values)
    return CanonicalSolution(coeffs, sol.rank, residual, "" if not residual else "overdetermined")


def sampled_rank(system: BDSystem, points: Sequence[Mapping[str, object]]) -> int:
    """Rank of the stacked matrix evaluated at exact sample points (max over points)."""
    best = 0
    for pt in points:
        rows = [[e.evaluate(pt) for e in row] for row in system.matrix]
        best = max(best, linalg.rank(rows))
    return best


@dataclass(frozen=True)
class PotentialFamily:
    """A finite basis of candidate potentials in the positions of a phase space."""

    space: PhaseSpace
    basis: tuple[RationalFunction, ...]

    def __post_init__(self):
        reg = self.space.registry
        object.__setattr__(self, "basis", tuple(RationalFunction.coerce(reg, f) for f in self.basis))
        for f in self.basis:
            if any(f.depends_on(n) for n in reg.names if n not in self.space.positions):
                raise ValueError("basis potentials may depend on positions only")

    def is_independent(self, points: Sequence[Mapping[str, object]]) -> bool:
        rows = [[f.evaluate(pt) for f in self.basis] for pt in points]
        return linalg.rank(rows) == len(self.basis)


def _jets(V: RationalFunction, names):
    g = [V.diff(n) for n in names]
    h = {}
    for i in range(3):
        for j in range(i, 3):
            h[(i + 1, j + 1)] = g[i].diff(names[j])
    return g, h


def fit_canonical(family: PotentialFamily, check_integrability: bool = True) -> CanonicalSolution:
    """Fit canonical coefficients so that every basis potential solves the canonical equations.

    Classification:
      * ``nondegenerate``: unique coefficients, five independent basis
        potentials, and the integrability obstructions vanish identically;
      * ``degenerate``: the basis constrains the first-derivative terms but
        does not single out a nondegenerate system;
      * ``underdetermined``: no basis potential has a nonzero gradient.
    """
    space = family.space
    names = space.positions
    reg = space.registry
    zero = RationalFunction.zero(reg)
    rows, rhs = [], []
    for V in family.basis:
        g, h = _jets(V, names)
        rows.append([g[0], g[1], g[2], V])
        rhs.append([h[(3, 3)] - h[(1, 1)], h[(2, 2)] - h[(1, 1)], h[(1, 2)], h[(2, 3)], h[(1, 3)]])
    sol = linalg.solve(rows, rhs, zero)
    if not sol.consistent:
        return CanonicalSolution(None, sol.rank, [r for r in sol.residuals if any(r)], "inconsistent")
    gradient_rank = linalg.rank([r[:3] for r in rows]) if rows else 0
    if sol.rank < 4:
        label = "underdetermined" if gradient_rank == 0 else "degenerate"
        return CanonicalSolution(None, sol.rank, [], label)
    # values[k] is the coefficient (A, B, C, D)-slot k for each equation; transpose
    values = [[sol.values[k][e] for k in (0, 1, 2, 3)] for e in range(5)]
    coeffs = _from_unknown_solution(values)
    label = "degenerate"
    if len(family.basis) == 5:
        if check_integrability:
            from .integrability import build_matrices, obstructions

            U = obstructions(build_matrices(coeffs))
            if all(not e for m in U for row in m for e in row):
                label = "nondegenerate"
        else:
            label = "nondegenerate"
    return CanonicalSolution(coeffs, sol.rank, [], label)


def canonical_residuals(coeffs: CanonicalCoefficients, V: RationalFunction, names) -> dict:
    """Residual of each canonical equation for an explicit potential V."""
    g, h = _jets(V, names)
    out = {}
    for pair, lhs in (
        ("33", h[(3, 3)] - h[(1, 1)]),
        ("22", h[(2, 2)] - h[(1, 1)]),
        ("12", h[(1, 2)]),
        ("13", h[(1, 3)]),
        ("23", h[(2, 3)]),
    ):
        D, A, B, C = coeffs.first_derivative_row(pair)
        out[pair] = lhs - (A * g[0] + B * g[1] + C * g[2] + D * V)
    return out


# ---------------------------------------------------------------------------
# truncated Taylor series over exact scalars


def multi_indices(nvars: int, order: int):
    """All exponent tuples of total degree <= order, graded then lex descending."""
    out = []
    for deg in range(order + 1):
        for e in product(range(deg + 1), repeat=nvars):
            if sum(e) == deg:
                out.append(e)
    return out


def _poly_series(p, registry, names, point, order):
    from .algebra import _backend as bk

    idx = [registry.index(n) for n in names]
    others = [j for j in range(len(registry)) if j not in idx]
    out: dict = {}
    shifts = [GaussianRational.coerce(point[n]) for n in names]
    from math import comb

    for m, c in p.items():
        if any(m[j] for j in others):
            raise ValueError("series expansion needs every non-position variable fixed")
        coeff = bk.coeff_to_gaussian(c)
        exps = [m[j] for j in idx]
        # expand prod (x0_k + h_k)^e_k
        ranges = [range(e + 1) for e in exps]
        for ks in product(*ranges):
            if sum(ks) > order:
                continue
            term = coeff
            for e, k, s in zip(exps, ks, shifts):
                term = term * comb(e, k) * (s ** (e - k))
            if term:
                out[ks] = out.get(ks, GaussianRational(0)) + term
    return out


def taylor_coefficients(f: RationalFunction, names: Sequence[str], point: Mapping[str, object], order: int) -> dict:
    """Taylor coefficients c_alpha of f(point + h) = sum c_alpha h^alpha up to ``order``."""
    reg = f.registry
    num = _poly_series(f.num_element, reg, names, point, order)
    den = _poly_series(f.den_element, reg, names, point, order)
    d0 = den.get((0,) * len(names), GaussianRational(0))
    if not d0:
        from .algebra import PoleError

        raise PoleError("expansion point is a pole")
    out = {}
    for alpha in multi_indices(len(names), order):
        acc = num.get(alpha, GaussianRational(0))
        for beta, db in den.items():
            if not any(beta) or any(b > a for a, b in zip(alpha, beta)):
                continue
            rest = tuple(a - b for a, b in zip(alpha, beta))
            acc = acc - db * out[rest]
        out[alpha] = acc / d0
    return out


def matrix_expansions(coeffs: CanonicalCoefficients, point, order: int, names: Sequence[str] | None = None) -> list:
    """Taylor coefficients, to ``order - 1``, of every entry of the three integrability matrices."""
    from .integrability import build_matrices

    names = tuple(names) if names is not None else tuple(coeffs.registry.positions)
    return [
        [[taylor_coefficients(e, names, point, max(order - 1, 0)) for e in row] for row in M]
        for M in build_matrices(coeffs).matrices
    ]


class SeriesInconsistency(ValueError):
    """Different differentiation orders gave different Taylor coefficients."""


def potential_series(
    coeffs: CanonicalCoefficients,
    point: Mapping[str, object],
    seed: Sequence[object],
    order: int,
    names: Sequence[str] | None = None,
    check_consistency: bool = True,
    expansions: list | None = None,
) -> dict:
    """Taylor coefficients of the potential V at a regular point.

    ``seed`` is (V, V1, V2, V3, V11) at the point.  The closed first-order
    system d_j w = A^(j) w is propagated in exact arithmetic; with
    ``check_consistency`` every admissible differentiation order is used and
    disagreement raises :class:`SeriesInconsistency`.  ``expansions`` takes
    the output of :func:`matrix_expansions` for the same point and order so
    that repeated solves skip re-expanding the coefficient matrices.
    """
    reg = coeffs.registry
    names = tuple(names) if names is not None else tuple(n for n in reg.positions)
    if len(names) != 3:
        raise ValueError("three position names are required")
    if len(seed) != 5:
        raise ValueError("seed must be (V, V1, V2, V3, V11)")
    w0 = [GaussianRational.coerce(s) for s in seed]
    series_mats = expansions if expansions is not None else matrix_expansions(coeffs, point, order, names)
    w: dict = {(0, 0, 0): w0}
    zero = GaussianRational(0)

    def step(alpha, j):
        lower = list(alpha)
        lower[j] -= 1
        lower = tuple(lower)
        M = series_mats[j]
        acc = [zero] * 5
        for gamma, wg in w.items():
            if any(g > l for g, l in zip(gamma, lower)):
                continue
            beta = tuple(l - g for l, g in zip(lower, gamma))
            for r in range(5):
                for c in range(5):
                    mb = M[r][c].get(beta)
                    if mb and wg[c]:
                        acc[r] = acc[r] + mb * wg[c]
        return [v / alpha[j] for v in acc]

    for alpha in multi_indices(3, order):
        if not any(alpha):
            continue
        js = [j for j in range(3) if alpha[j] > 0]
        first = step(alpha, js[0])
        if check_consistency:
            for j in js[1:]:
                if step(alpha, j) != first:
                    raise SeriesInconsistency(f"coefficient {alpha} depends on differentiation order")
        w[alpha] = first
    return {alpha: vec[0] for alpha, vec in w.items()}


# ---------------------------------------------------------------------------
# comparison with the tabulated 3x5 display


def tabulated_bd_rows(t: CKTensor):
    """The displayed matrix rows and right-hand sides (over V1, V2, V3, V), entry by entry.

    Returned as (matrix, rhs) with the rhs written as coefficient vectors so the
    comparison with assemble_system is direct: B v = rhs.
    """
    names = t.space.positions

    def a(i, j):
        return t.a[i - 1][j - 1]

    def d(i, j, k):
        return a(i, j).diff(names[k - 1])

    def dd(i, j, k, l):
        return d(i, j, k).diff(names[l - 1])

    zero = RationalFunction.zero(t.space.registry)
    matrix = [
        [zero, a(1, 2), a(1, 1) - a(2, 2), a(3, 1), -a(3, 2)],
        [a(1, 3), zero, -a(2, 3), a(2, 1), a(1, 1) - a(3, 3)],
        [a(3, 2), -a(3, 2), -a(1, 3), a(2, 2) - a(3, 3), a(1, 2)],
    ]
    V1 = [d(1, 2, 1) - d(1, 1, 2) + d(2, 2, 2), d(3, 1, 1) - d(1, 1, 3) + d(3, 3, 3), d(3, 1, 2) - d(2, 1, 3)]
    V2 = [d(2, 2, 1) - d(2, 1, 2) - d(1, 1, 1), d(3, 2, 1) - d(1, 2, 3), d(3, 2, 2) - d(2, 2, 3) + d(3, 3, 3)]
    V3 = [d(3, 2, 1) - d(3, 1, 2), d(3, 3, 1) - d(1, 3, 3) - d(1, 1, 1), d(3, 3, 2) - d(2, 3, 3) - d(2, 2, 2)]
    V0 = [dd(2, 2, 2, 1) - dd(1, 1, 1, 2), dd(3, 3, 3, 1) - dd(1, 1, 1, 3), dd(3, 3, 3, 2) - dd(2, 2, 2, 3)]
    rhs = [[V1[r], V2[r], V3[r], V0[r]] for r in range(3)]
    return matrix, rhs


def tabulated_bd_mismatches(t: CKTensor) -> list:
    """Entries where the displayed row disagrees with the derived BD row, after matching row signs.

    Each mismatch is (row, column label); rows are compared up to an overall sign
    chosen to agree on the largest number of entries.
    """
    derived = assemble_system([t])
    matrix, rhs = tabulated_bd_rows(t)
    labels = list(UNKNOWNS) + ["V1", "V2", "V3", "V"]
    out = []
    for r in range(3):
        d_row = list(derived.matrix[r]) + list(derived.rhs[r])
        p_row = list(matrix[r]) + list(rhs[r])
        best = None
        for s in (1, -1):
            bad = [labels[k] for k, (u, v) in enumerate(zip(d_row, p_row)) if u != s * v]
            if best is None or len(bad) < len(best):
                best = bad
        out.extend((r + 1, lab) for lab in best)
    return out


def reduced_variable_matrix(tensors: Sequence[CKTensor]) -> list:
    """Rows (a33 - a11, a22 - a11, a12, a31, a32), one per tensor."""
    rows = []
    for t in tensors:
        a = t.a
        rows.append([a[2][2] - a[0][0], a[1][1] - a[0][0], a[0][1], a[2][0], a[2][1]])
    return rows


def sampled_matrix_rank(matrix, points: Sequence[Mapping[str, object]]) -> int:
    best = 0
    for pt in points:
        best = max(best, linalg.rank([[e.evaluate(pt) for e in row] for row in matrix]))
    return best
