"""Pentaspherical coordinates: the null cone in five dimensions, on which the
conformal group of flat 3-space acts linearly."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import I, Polynomial, RationalFunction, VariableRegistry
from .algebra.rational import PoleError
from .phase_space import PhaseFunction, PhaseSpace, poisson_bracket

POSITIONS = ("x1", "x2", "x3", "x4", "x5")
MOMENTA = ("px1", "px2", "px3", "px4", "px5")


@dataclass(frozen=True)
class PentasphericalFrame:
    """Ten-dimensional phase space with the null-cone constraint C1 and its momentum companion C2."""

    space: PhaseSpace

    def x(self, k: int) -> RationalFunction:
        return self.space.var(POSITIONS[k - 1])

    def p(self, k: int) -> PhaseFunction:
        return self.space.momentum(k - 1)

    @property
    def w(self) -> RationalFunction:
        """x4 + i x5, the projective denominator."""
        return self.x(4) + I * self.x(5)

    @property
    def q(self) -> PhaseFunction:
        return self.p(4) + self.p(5) * I

    @property
    def C1(self) -> PhaseFunction:
        return PhaseFunction.coerce(self.space, sum((self.x(k) ** 2 for k in range(1, 6)), RationalFunction.zero(self.space.registry)))

    @property
    def C2(self) -> PhaseFunction:
        out = PhaseFunction.zero(self.space)
        for k in range(1, 6):
            out = out + self.p(k) * self.x(k)
        return out


@lru_cache(maxsize=None)
def frame() -> PentasphericalFrame:
    return PentasphericalFrame(PhaseSpace.standard(POSITIONS, momenta=MOMENTA))


# ---------------------------------------------------------------------------
# normal form modulo C1 and C2


def _split_x1(p: Polynomial, s: Polynomial):
    """p = a + b x1 after replacing x1^2 by -s."""
    reg = p.registry
    j = reg.index("x1")
    a = Polynomial.zero(reg)
    b = Polynomial.zero(reg)
    neg_s = -s
    powers = {0: Polynomial.one(reg)}
    for exps, c in p.terms():
        e = exps[j]
        m, r = divmod(e, 2)
        rest = list(exps)
        rest[j] = 0
        mono = Polynomial.from_terms(reg, {tuple(rest): c})
        if m not in powers:
            powers[m] = neg_s**m
        mono = mono * powers[m]
        if r:
            b = b + mono
        else:
            a = a + mono
    return a, b


def _reduce_coefficient(f: RationalFunction, s: Polynomial) -> RationalFunction:
    a, b = _split_x1(f.numerator, s)
    c, d = _split_x1(f.denominator, s)
    x1 = Polynomial.variable(f.registry, "x1")
    if not d:
        return RationalFunction.from_polynomials(a + b * x1, c)
    # rationalise (a + b x1) / (c + d x1) using x1^2 = -s
    num = (a * c + b * d * s) + (b * c - a * d) * x1
    den = c * c + d * d * s
    if not den:
        raise PoleError("denominator vanishes on the null cone")
    return RationalFunction.from_polynomials(num, den)


def _compose_momentum(f: PhaseFunction, k: int, image: PhaseFunction) -> PhaseFunction:
    """Replace momentum k (0-based) by a phase function."""
    space = f.space
    out = PhaseFunction.zero(space)
    cache = {0: PhaseFunction.coerce(space, 1)}
    for m, c in f.terms.items():
        e = m[k]
        if e not in cache:
            cache[e] = image**e
        rest = list(m)
        rest[k] = 0
        out = out + PhaseFunction(space, {tuple(rest): c}) * cache[e]
    return out


def normal_form(f: PhaseFunction, use_c2: bool = True) -> PhaseFunction:
    """Canonical representative on C1 = C2 = 0: px1 eliminated, x1 appearing at most linearly."""
    fr = frame()
    space = fr.space
    if use_c2:
        rest = PhaseFunction.zero(space)
        for k in range(2, 6):
            rest = rest + fr.p(k) * fr.x(k)
        f = _compose_momentum(f, 0, rest * (-1 / fr.x(1)))
    reg = space.registry
    s = sum((Polynomial.variable(reg, POSITIONS[k]) ** 2 for k in range(1, 5)), Polynomial.zero(reg))
    return PhaseFunction(space, {m: _reduce_coefficient(c, s) for m, c in f.terms.items()})


def vanishes_on_constraints(f: PhaseFunction, use_c2: bool = True) -> bool:
    return normal_form(f, use_c2).is_zero


# ---------------------------------------------------------------------------
# lifts from flat space


def project_point(point: Sequence) -> tuple:
    """(x1..x5) -> (x, y, z) = -(x1, x2, x3) / (x4 + i x5)."""
    from .algebra import GaussianRational

    x1, x2, x3, x4, x5 = (GaussianRational.coerce(v) for v in point)
    w = x4 + I * x5
    if not w:
        raise PoleError("x4 + i x5 vanishes: point at projective infinity")
    return (-x1 / w, -x2 / w, -x3 / w)


def lift_positions() -> tuple:
    fr = frame()
    w = fr.w
    return tuple(-fr.x(k) / w for k in (1, 2, 3))


def lift_momenta() -> tuple:
    """p_x = -(x4 + i x5) p_x1 + x1 (p_x4 + i p_x5), and cyclically."""
    fr = frame()
    return tuple(fr.q * fr.x(k) - fr.p(k) * fr.w for k in (1, 2, 3))


def lift(f: PhaseFunction) -> PhaseFunction:
    """Lift a flat-space phase function (three positions, three momenta) to pentaspherical space."""
    src = f.space
    if src.dim != 3:
        raise ValueError("lifts are defined from three-dimensional flat space")
    fr = frame()
    xs = dict(zip(src.positions, lift_positions()))
    ps = lift_momenta()
    reg = fr.space.registry
    out = PhaseFunction.zero(fr.space)
    powers = {}
    for m, c in f.terms.items():
        coeff = c.substitute(xs, target=reg)
        term = PhaseFunction.coerce(fr.space, coeff)
        for k, e in enumerate(m):
            if e:
                if (k, e) not in powers:
                    powers[(k, e)] = ps[k] ** e
                term = term * powers[(k, e)]
        out = out + term
    return out


def lifted_hamiltonian_identity():
    """Return (residual, m1, m2) with lift(H0) - w^2 sum p_k^2 = m1 C1 + m2 C2 exactly."""
    fr = frame()
    ps = lift_momenta()
    H0 = ps[0] * ps[0] + ps[1] * ps[1] + ps[2] * ps[2]
    kin = PhaseFunction.zero(fr.space)
    for k in range(1, 6):
        kin = kin + fr.p(k) * fr.p(k)
    residual = H0 - kin * fr.w**2
    m1 = fr.q * fr.q
    m2 = fr.q * fr.w * (-2)
    return residual, m1, m2


def rotation(i: int, j: int) -> PhaseFunction:
    """x_i p_xj - x_j p_xi."""
    fr = frame()
    return fr.p(j) * fr.x(i) - fr.p(i) * fr.x(j)


def killing_dictionary():
    """Ten (name, flat generator, pentaspherical generator) triples."""
    from .catalog import flat3

    sp = flat3()
    x, y, z = (sp.var(n) for n in sp.positions)
    px, py, pz = (sp.momentum(k) for k in range(3))
    r2 = x * x + y * y + z * z
    dil = px * x + py * y + pz * z
    R = rotation
    entries = [
        ("translation_x", px, R(1, 4) + R(1, 5) * I),
        ("translation_y", py, R(2, 4) + R(2, 5) * I),
        ("translation_z", pz, R(3, 4) + R(3, 5) * I),
        ("rotation_xy", py * x - px * y, R(1, 2)),
        ("rotation_yz", pz * y - py * z, R(2, 3)),
        ("rotation_zx", px * z - pz * x, R(3, 1)),
        ("dilation", dil, R(4, 5) * I),
        ("special_x", px * (-r2) + dil * (2 * x), R(1, 4) - R(1, 5) * I),
        ("special_y", py * (-r2) + dil * (2 * y), R(2, 4) - R(2, 5) * I),
        ("special_z", pz * (-r2) + dil * (2 * z), R(3, 4) - R(3, 5) * I),
    ]
    return entries


def dictionary_residuals() -> dict:
    return {name: normal_form(lift(flat) - pent) for name, flat, pent in killing_dictionary()}


def inversion_reflection(f: PhaseFunction) -> PhaseFunction:
    """x4 -> -x4, p_x4 -> -p_x4."""
    space = f.space
    j = POSITIONS.index("x4")
    out = {}
    for m, c in f.terms.items():
        sign = -1 if m[j] % 2 else 1
        out[m] = c.substitute({"x4": -space.var("x4")}) * sign
    return PhaseFunction(space, out)


def one_form_residuals(use_c2: bool = True) -> list:
    """Coefficient of dx_k in p.dx - sum p_k dx_k minus mu x_k (the multiple of dC1), mu = -q/w.

    Each entry should vanish modulo C1 and C2.
    """
    fr = frame()
    X = lift_positions()
    P = lift_momenta()
    mu = fr.q * (-1 / fr.w)
    out = []
    for k in range(1, 6):
        name = POSITIONS[k - 1]
        coeff = PhaseFunction.zero(fr.space)
        for j in range(3):
            coeff = coeff + P[j] * X[j].diff(name)
        out.append(normal_form(coeff - fr.p(k) - mu * fr.x(k), use_c2))
    return out


def rotation_bracket_defect(i, j, k) -> PhaseFunction:
    """{R_ij, R_jk} - R_ki; zero with the bracket normalised so that {x, p} = 1."""
    return poisson_bracket(rotation(i, j), rotation(j, k)) - rotation(k, i)


def so5_closure_defects() -> dict:
    """Bracket defects over all ordered triples of distinct indices."""
    out = {}
    for i in range(1, 6):
        for j in range(1, 6):
            for k in range(1, 6):
                if len({i, j, k}) == 3:
                    out[(i, j, k)] = rotation_bracket_defect(i, j, k)
    return out


def homogeneity_residuals(test_functions) -> list:
    """Euler operator checks: lifted flat data has degree 0, w degree 1, V/w^2 degree -2.

    ``test_functions`` are rational functions over the flat (x, y, z) registry.
    """
    fr = frame()
    reg = fr.space.registry
    from .catalog import flat3

    sp = flat3()
    xs = dict(zip(sp.positions, lift_positions()))

    def euler(f):
        out = RationalFunction.zero(reg)
        for n in POSITIONS:
            out = out + reg.var(n) * f.diff(n)
        return out

    res = [euler(fr.w) - fr.w]
    for f in test_functions:
        g = f.substitute(xs, target=reg)
        res.append(euler(g))
        vt = g / fr.w**2
        res.append(euler(vt) + 2 * vt)
    return res


# ---------------------------------------------------------------------------
# coordinate identities


def _registry(names):
    return VariableRegistry.build(auxiliary=names)


def ellipsoidal_squares(printed_sign: bool = False):
    """s_1^2 .. s_4^2 for sphere ellipsoidal coordinates (mu, nu, rho; a, b).

    Lagrange interpolation over the nodes a, b, 1, 0 forces s_4^2 = +mu nu rho / (a b);
    ``printed_sign`` selects the negated variant, which does not lie on the sphere.
    """
    reg = _registry(("mu", "nu", "rho", "a", "b"))
    mu, nu, rho, a, b = (reg.var(n) for n in ("mu", "nu", "rho", "a", "b"))
    s1 = (mu - a) * (nu - a) * (rho - a) / ((b - a) * (a - 1) * a)
    s2 = (mu - b) * (nu - b) * (rho - b) / ((a - b) * (b - 1) * b)
    s3 = -(mu - 1) * (nu - 1) * (rho - 1) / ((a - 1) * (b - 1))
    s4 = (mu * nu * rho) / (a * b)
    if printed_sign:
        s4 = -s4
    return (s1, s2, s3, s4)


def cyclidic_squares():
    """x_1^2 .. x_5^2 for general cyclidic coordinates (rho, mu, nu; e1..e5)."""
    names = ("rho", "mu", "nu", "e1", "e2", "e3", "e4", "e5")
    reg = _registry(names)
    rho, mu, nu = (reg.var(n) for n in names[:3])
    e = [reg.var(f"e{k}") for k in range(1, 6)]
    out = []
    for k in range(5):
        den = RationalFunction.one(reg)
        for j in range(5):
            if j != k:
                den = den * (e[k] - e[j])
        out.append((rho - e[k]) * (mu - e[k]) * (nu - e[k]) / den)
    return tuple(out), tuple(e)


def _constrained_conformal_factor(printed: bool):
    """Identity (v), with the conformal factor expressed through x1..x5 on the cone.

    Works over x1..x5, e1..e5 modulo C1 = 0 and sum e_k x_k^2 = -1 (solved for e1).
    Returns the residual, which must vanish after x1^2 -> -(x2^2+..+x5^2).
    """
    names = POSITIONS + ("e1", "e2", "e3", "e4", "e5")
    reg = _registry(names)
    X = [reg.var(n) for n in POSITIONS]
    e = [reg.var(f"e{k}") for k in range(1, 6)]
    w = X[3] + I * X[4]
    x, y, z = (-X[k] / w for k in range(3))
    r2 = x * x + y * y + z * z
    rhs_tail = e[1] * y * y + e[2] * z * z
    if printed:
        lhs = -(w**2)
        rhs = e[0] * x * x + rhs_tail + e[3] * (1 - r2) ** 2 - e[4] * (1 + r2) ** 2
    else:
        lhs = -4 / w**2
        rhs = 4 * (e[0] * x * x + rhs_tail) + e[3] * (1 - r2) ** 2 - e[4] * (1 + r2) ** 2
    diff = lhs - rhs
    # sum e_k x_k^2 = -1 solved for e1
    e1 = -(1 + sum((e[k] * X[k] ** 2 for k in range(1, 5)), RationalFunction.zero(reg))) / X[0] ** 2
    diff = diff.substitute({"e1": e1})
    s = sum((Polynomial.variable(reg, POSITIONS[k]) ** 2 for k in range(1, 5)), Polynomial.zero(reg))
    return _reduce_coefficient(diff, s)


def stereographic_round_trip():
    reg = _registry(("x", "y", "z"))
    x, y, z = (reg.var(n) for n in ("x", "y", "z"))
    r2 = x * x + y * y + z * z
    s = (2 * x / (r2 + 1), 2 * y / (r2 + 1), 2 * z / (r2 + 1), (1 - r2) / (1 + r2))
    back = tuple(s[k] / (1 + s[3]) for k in range(3))
    return [back[0] - x, back[1] - y, back[2] - z, sum((t * t for t in s), RationalFunction.zero(reg)) - 1]


def collision_check(j: int = 2, k: int = 3):
    """Specialise e_k = e_j in the cyclidic squares; returns the index of the first square with a pole, or None."""
    cyc, e = cyclidic_squares()
    name_j, name_k = f"e{j}", f"e{k}"
    for idx, sq in enumerate(cyc):
        try:
            sq.substitute({name_k: e[j - 1]})
        except PoleError:
            return idx
    return None


def coordinate_identities() -> dict:
    """Residuals of the coordinate identities; the zero rational function means the identity holds."""
    ell = ellipsoidal_squares()
    cyc, e = cyclidic_squares()
    reg = cyc[0].registry
    out = {
        "(i) sphere": sum(ell, RationalFunction.zero(ell[0].registry)) - 1,
        "(i) sphere, printed sign": sum(ellipsoidal_squares(True), RationalFunction.zero(ell[0].registry)) - 1,
        "(ii) null cone": sum(cyc, RationalFunction.zero(reg)),
        "(iii) quadric": sum((ek * xk for ek, xk in zip(e, cyc)), RationalFunction.zero(reg)) + 1,
    }
    rt = stereographic_round_trip()
    out["(iv) stereographic"] = next((r for r in rt if r), rt[0])
    out["(v) conformal factor, printed"] = _constrained_conformal_factor(printed=True)
    out["(v) conformal factor, corrected"] = _constrained_conformal_factor(printed=False)
    return out


def projective_identities() -> list:
    """x^2+y^2+z^2-1 = -2x4/w and x^2+y^2+z^2+1 = 2i x5/w with (projectivecords) x_k(X, Y, Z, T)."""
    reg = _registry(("X", "Y", "Z", "T"))
    X, Y, Z, T = (reg.var(n) for n in ("X", "Y", "Z", "T"))
    x5 = (X * X + Y * Y + Z * Z + T * T) * I
    xs = (2 * X * T, 2 * Y * T, 2 * Z * T, X * X + Y * Y + Z * Z - T * T, x5)
    w = xs[3] + I * xs[4]
    cart = tuple(-xs[k] / w for k in range(3))
    r2 = sum((c * c for c in cart), RationalFunction.zero(reg))
    return [
        cart[0] - X / T, cart[1] - Y / T, cart[2] - Z / T,
        sum((v * v for v in xs), RationalFunction.zero(reg)),
        r2 - 1 + 2 * xs[3] / w,
        r2 + 1 - 2 * I * xs[4] / w,
    ]


def derivative_relations():
    """Chain-rule rows d/dX, d/dY, d/dZ in the basis d/dx1..d/dx5, both derived and as printed."""
    reg = _registry(("X", "Y", "Z", "T"))
    X, Y, Z, T = (reg.var(n) for n in ("X", "Y", "Z", "T"))
    xs = (2 * X * T, 2 * Y * T, 2 * Z * T, X * X + Y * Y + Z * Z - T * T, (X * X + Y * Y + Z * Z + T * T) * I)
    derived = {v: tuple(f.diff(v) for f in xs) for v in ("X", "Y", "Z")}
    zero = RationalFunction.zero(reg)
    printed = {
        "X": (2 * T, zero, zero, 2 * X, 2 * I * X),
        "Y": (2 * T, zero, zero, 2 * Y, 2 * I * Y),
        "Z": (2 * T, zero, zero, 2 * Z, 2 * I * Z),
    }
    return derived, printed
