"""Structure relations of the degenerate Laplace system H = sum (d_i^2 + a_i / x_i^2)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import GaussianRational
from .diffop import (
    DiffOperator,
    QuantumGenerators,
    build_quantum_generators,
    commutator,
    compose,
    inversion_conjugate,
    is_conformal_symmetry_op,
    op_mod_H,
)


@lru_cache(maxsize=None)
def generators(n: int) -> QuantumGenerators:
    return build_quantum_generators(n)


@dataclass(frozen=True)
class Relation:
    """X = R o H + remainder; the relation holds on the null space of H iff the remainder is zero."""

    name: str
    R: DiffOperator
    remainder: DiffOperator

    @property
    def holds(self) -> bool:
        return self.remainder.is_zero


def relation(name: str, X: DiffOperator, H: DiffOperator) -> Relation:
    R, rem = op_mod_H(X, H)
    return Relation(name, R, rem)


def symmetry_multipliers(n: int) -> dict:
    """R_S with [S, H] = R_S H for every generator; None marks a failure."""
    g = generators(n)
    ops = {f"P{j + 1}": p for j, p in enumerate(g.P)}
    ops.update({f"J{j}{k}": v for (j, k), v in g.J.items()})
    ops.update({f"K{j + 1}": k for j, k in enumerate(g.K)})
    ops["D"] = g.D
    return {name: is_conformal_symmetry_op(S, g.H) for name, S in ops.items()}


def linear_identities(n: int) -> list[Relation]:
    """Sum P_i ~ 0, sum K_i ~ 0 and sum J_jk + D^2 + sum a_i - (n-2)/2 ~ 0, exactly as printed."""
    g = generators(n)
    space = g.space
    a_sum = sum((space.var(f"a{i + 1}") for i in range(n)), space.var("a1") * 0)
    J_sum = sum(g.J.values(), DiffOperator.zero(space))
    third = J_sum + compose(g.D, g.D) + a_sum - GaussianRational(n - 2) / 2
    return [
        relation("sum P", sum(g.P, DiffOperator.zero(space)), g.H),
        relation("sum K", sum(g.K, DiffOperator.zero(space)), g.H),
        relation("sum J + D^2 + sum a - (n-2)/2", third, g.H),
    ]


def casimir_constant(n: int) -> GaussianRational | None:
    """The constant c with sum J + D^2 + sum a + c ~ 0, when one exists."""
    g = generators(n)
    space = g.space
    a_sum = sum((space.var(f"a{i + 1}") for i in range(n)), space.var("a1") * 0)
    X = sum(g.J.values(), DiffOperator.zero(space)) + compose(g.D, g.D) + a_sum
    _, rem = op_mod_H(X, g.H)
    if rem.order() > 0:
        return None
    c = rem.coefficient((0,) * n)
    if c.variables():
        return None
    return -c.evaluate({})


def dilation_action(n: int) -> dict:
    """Defects [D,P_j] - 2P_j, [D,K_j] + 2K_j, [D,J_jk] and [D,H] - 2H."""
    g = generators(n)
    out = {"[D,H]-2H": commutator(g.D, g.H) - 2 * g.H}
    for j, P in enumerate(g.P):
        out[f"[D,P{j + 1}]-2P{j + 1}"] = commutator(g.D, P) - 2 * P
    for j, K in enumerate(g.K):
        out[f"[D,K{j + 1}]+2K{j + 1}"] = commutator(g.D, K) + 2 * K
    for (j, k), J in g.J.items():
        out[f"[D,J{j}{k}]"] = commutator(g.D, J)
    return out


def commuting_pairs(n: int) -> dict:
    g = generators(n)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            out[f"[P{i + 1},P{j + 1}]"] = commutator(g.P[i], g.P[j])
            out[f"[K{i + 1},K{j + 1}]"] = commutator(g.K[i], g.K[j])
    return out


def inversion_defects(n: int) -> dict:
    """I P_j I - K_j, I J_jk I - J_jk, I D I + D."""
    g = generators(n)
    out = {}
    for j, P in enumerate(g.P):
        out[f"IP{j + 1}I-K{j + 1}"] = inversion_conjugate(P) - g.K[j]
    for (j, k), J in g.J.items():
        out[f"IJ{j}{k}I-J{j}{k}"] = inversion_conjugate(J) - J
    out["IDI+D"] = inversion_conjugate(g.D) + g.D
    return out


# ---------------------------------------------------------------------------
# n = 2


def printed_fourth_order_multiplier() -> DiffOperator:
    """The displayed right factor R (with its minus sign) of the fourth-order n=2 relation."""
    g = generators(2)
    sp = g.space
    x, y = sp.var("x1"), sp.var("x2")
    a1, a2 = sp.var("a1"), sp.var("a2")
    dx, dy = DiffOperator.partial(sp, 0), DiffOperator.partial(sp, 1)
    inner = (
        (x**2 * (x**2 - 2 * y**2)) * compose(dx, dx)
        - x**4 * compose(dy, dy)
        + (4 * x**3 * y) * compose(dx, dy)
        + (x * (6 * x**2 - 4 * y**2)) * dx
        + (6 * x**2 * y) * dy
        + (9 * x**2 + a1 * x**2 * y**2 + 2 * a1 * y**2 - a2 * x**4 / y**2)
    )
    return -inner


def fourth_order_operator() -> DiffOperator:
    """J_12^2 - (K_1P_1 + P_1K_1)/2 - 5J_12 - 3(a_1+a_2) - 4a_1a_2."""
    g = generators(2)
    sp = g.space
    a1, a2 = sp.var("a1"), sp.var("a2")
    J = g.J[(1, 2)]
    P1, K1 = g.P[0], g.K[0]
    sym = (compose(K1, P1) + compose(P1, K1)) / 2
    return compose(J, J) - sym - 5 * J - 3 * (a1 + a2) - 4 * a1 * a2


@dataclass(frozen=True)
class FourthOrderReport:
    relation: Relation
    printed_R: DiffOperator
    printed_product_defect: DiffOperator  # X - printed_R o H

    @property
    def printed_R_matches(self) -> bool:
        return self.printed_product_defect.is_zero


def fourth_order_relation() -> FourthOrderReport:
    g = generators(2)
    X = fourth_order_operator()
    rel = relation("fourth-order n=2", X, g.H)
    R = printed_fourth_order_multiplier()
    return FourthOrderReport(rel, R, X - compose(R, g.H))


def n2_relations() -> list[Relation]:
    g = generators(2)
    sp = g.space
    a1, a2 = sp.var("a1"), sp.var("a2")
    r2 = sp.var("x1") ** 2 + sp.var("x2") ** 2
    D = g.D
    out = [
        relation("P1+P2", g.P[0] + g.P[1], g.H),
        relation("K1+K2", g.K[0] + g.K[1], g.H),
        relation("J12+D^2+a1+a2", g.J[(1, 2)] + compose(D, D) + a1 + a2, g.H),
    ]
    bracket = commutator(g.P[0], g.K[0])
    target = compose(D, compose(D, D)) + (4 * (1 + 2 * a1 + 2 * a2)) * D
    out.append(relation("[P1,K1]-D^3-4(1+2a1+2a2)D", bracket - target, g.H))
    return out


def p1k1_derived() -> Relation:
    """[P_1, K_1] ~ -8 D^3 - 4(1 + 2a_1 + 2a_2) D, the form the division algorithm produces."""
    g = generators(2)
    sp = g.space
    a1, a2 = sp.var("a1"), sp.var("a2")
    D = g.D
    target = -8 * compose(D, compose(D, D)) - (4 * (1 + 2 * a1 + 2 * a2)) * D
    return relation("[P1,K1]+8D^3+4(1+2a1+2a2)D", commutator(g.P[0], g.K[0]) - target, g.H)


def derived_fourth_order_multiplier() -> DiffOperator:
    """Right factor R of the fourth-order relation as the division algorithm returns it."""
    return fourth_order_relation().relation.R


def n2_printed_multipliers() -> dict:
    """Displayed right factors: P1+P2 = H, K1+K2 = r^4 H, J12 + D^2 + a1 + a2 = r^2 H."""
    g = generators(2)
    sp = g.space
    r2 = sp.var("x1") ** 2 + sp.var("x2") ** 2
    one = DiffOperator.identity(sp)
    return {"P1+P2": one, "K1+K2": r2**2 * one, "J12+D^2+a1+a2": r2 * one}


def sl2_relations() -> dict:
    """With a_2 = 0: L_1 = d_2 and L_2 = -r^2 d_2 + 2 x_2 E close into sl(2) with D."""
    g = generators(2)
    sp = g.space
    x1, x2 = sp.var("x1"), sp.var("x2")
    d1, d2 = DiffOperator.partial(sp, 0), DiffOperator.partial(sp, 1)
    euler = x1 * d1 + x2 * d2
    L1 = d2
    L2 = -(x1**2 + x2**2) * d2 + (2 * x2) * euler
    D = g.D
    H0 = g.H - sp.var("a2") / x2**2
    return {
        "[D,L1]-L1": commutator(D, L1) - L1,
        "[D,L2]+L2": commutator(D, L2) + L2,
        "[L1,L2]+2D": commutator(L1, L2) + 2 * D,
        "[L2,H0] remainder": op_mod_H(commutator(L2, H0), H0)[1],
        "[L1,H0] remainder": op_mod_H(commutator(L1, H0), H0)[1],
        "K2 - L2^2 at a2=0": g.K[1] - sp.var("a2") * (x1**2 + x2**2) ** 2 / x2**2 - compose(L2, L2),
    }
