"""Builtin verification suites; each check carries the label of the identity it exercises."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from fractions import Fraction

from .checks import Check, documented, exact, holds
from .report import Outcome, Verdict


class UnknownSuite(KeyError):
    pass


def _c(name, anchor):
    def wrap(fn: Callable[[int], Outcome]) -> Check:
        return Check(name, anchor, fn)

    return wrap


# ---------------------------------------------------------------------------
# degenerate system


def _degenerate_common(n: int) -> list[Check]:
    from .. import degenerate as dg

    checks = []

    @_c(f"n{n}.symmetries", "Laplace1")
    def symmetries(seed):
        m = dg.symmetry_multipliers(n)
        bad = [k for k, v in m.items() if v is None]
        return holds(not bad, f"not conformal: {bad}")

    checks.append(symmetries)

    rels = {}

    def rel(i):
        if n not in rels:
            rels[n] = dg.linear_identities(n)
        return rels[n][i]

    checks.append(Check(f"n{n}.sum-P", "conformalident1", lambda s: exact([("remainder", rel(0).remainder)])))
    checks.append(Check(f"n{n}.sum-K", "conformalident1", lambda s: exact([("remainder", rel(1).remainder)])))

    def casimir(seed):
        printed = exact([("remainder", rel(2).remainder)])
        c = dg.casimir_constant(n)
        derived_ok = c is not None and c == Fraction(-((n - 2) ** 2), 4)
        derived = holds(derived_ok, f"constant {c}")
        note = f"constant term fixed by the division algorithm is {c}, i.e. -(n-2)^2/4"
        return documented(printed, derived, note)

    checks.append(Check(f"n{n}.casimir", "conformalident1", casimir))
    checks.append(Check(f"n{n}.dilation-action", "Daction", lambda s: exact(dg.dilation_action(n))))
    checks.append(Check(f"n{n}.commuting", "Daction", lambda s: exact(dg.commuting_pairs(n))))
    checks.append(Check(f"n{n}.inversion", "K_j'", lambda s: exact(dg.inversion_defects(n))))
    return checks


def _classical_degenerate(n: int) -> Check:
    def run(seed):
        from ..phase_space import build_degenerate_system, is_conformal_symmetry

        sysm = build_degenerate_system(n)
        H = sysm.hamiltonian
        gens = list(sysm.P) + list(sysm.J.values()) + list(sysm.K) + [sysm.D]
        bad = [k for k, S in enumerate(gens) if is_conformal_symmetry(S, H) is None]
        return holds(not bad, f"generators {bad} fail")

    return Check(f"n{n}.classical-symmetries", "Laplace1", run)


def volkmer_n2() -> list[Check]:
    from .. import degenerate as dg

    checks = _degenerate_common(2) + [_classical_degenerate(2)]

    def rel(name):
        return next(r for r in dg.n2_relations() if r.name == name)

    for name in ("P1+P2", "K1+K2", "J12+D^2+a1+a2"):
        def run(seed, name=name):
            r = rel(name)
            printed = dg.n2_printed_multipliers()[name]
            return exact([("remainder", r.remainder), ("R - printed factor", r.R - printed)])

        checks.append(Check(f"n2.relation {name}", "n=2relations", run))

    report = lru_cache(maxsize=None)(dg.fourth_order_relation)
    checks.append(Check("n2.fourth-order holds", "n=2relations", lambda s: exact([("remainder", report().relation.remainder)])))
    checks.append(Check("n2.fourth-order printed factor", "n=2relations",
                        lambda s: exact([("X - R_printed H", report().printed_product_defect)])))
    checks.append(Check("n2.[P1,K1] printed", "n=2relations",
                        lambda s: exact([("remainder", rel("[P1,K1]-D^3-4(1+2a1+2a2)D").remainder)])))
    checks.append(Check("n2.[P1,K1] derived", "n=2relations", lambda s: exact([("remainder", dg.p1k1_derived().remainder)])))
    checks.append(Check("n2.sl2", "n=2relations", lambda s: exact(dg.sl2_relations())))
    return checks


def volkmer_n3() -> list[Check]:
    from .. import degenerate as dg

    checks = _degenerate_common(3) + [_classical_degenerate(3)]

    def dh(seed):
        g = dg.generators(3)
        return exact([("[D,H]-2H", dg.commutator(g.D, g.H) - 2 * g.H)])

    checks.append(Check("n3.[D,H]", "dilation", dh))
    return checks


# ---------------------------------------------------------------------------
# nondegenerate system


@lru_cache(maxsize=None)
def _fit():
    from .. import bd_canonical as bd, catalog

    sp = catalog.flat3()
    return bd.fit_canonical(bd.PotentialFamily(sp, catalog.nondegenerate_basis(sp)))


@lru_cache(maxsize=None)
def _printed_coefficients():
    from .. import catalog
    from ..bd_canonical import CanonicalCoefficients

    return CanonicalCoefficients.from_mapping(catalog.printed_canonical_coefficients())


@lru_cache(maxsize=None)
def _tensors():
    from .. import catalog
    from ..killing import CKTensor

    J = catalog.nondegenerate_symmetries()
    return {k: CKTensor.from_phase_function(S) for k, S in J.items()}


def _sample_points():
    from fractions import Fraction as F

    return [
        {"x": F(1, 3), "y": F(2, 5), "z": F(3, 7)},
        {"x": F(-1, 2), "y": F(5, 3), "z": F(1, 9)},
        {"x": F(3), "y": F(5), "z": F(7)},
    ]


def nondegenerate_canon() -> list[Check]:
    from .. import bd_canonical as bd, catalog, integrability as it, reference_forms as rf
    from ..superintegrability import fifth_symmetry_exhibit

    checks = []

    def fit(seed):
        sol = _fit()
        if sol.coefficients is None or sol.classification != "nondegenerate":
            return Outcome(Verdict.FAIL, f"classification {sol.classification}")
        pc = _printed_coefficients().as_dict()
        return exact({k: v - pc[k] for k, v in sol.coefficients.as_dict().items()})

    checks.append(Check("canon.fit", "nondegcanon", fit))

    def bd_route(seed):
        t = _tensors()
        sol = bd.solve_canonical(bd.assemble_system([t[(1, 2)], t[(1, 3)], t[(2, 3)], t[(1, 4)]]))
        if sol.coefficients is None:
            return Outcome(Verdict.FAIL, f"rank {sol.rank}")
        pc = _printed_coefficients().as_dict()
        res = {k: v - pc[k] for k, v in sol.coefficients.as_dict().items()}
        res["extra conditions"] = len(sol.residual_conditions)
        return exact(res)

    checks.append(Check("canon.bd-solve", "veqn1a", bd_route))

    def ranks(seed):
        t = _tensors()
        four = [t[(1, 2)], t[(1, 3)], t[(2, 3)], t[(1, 4)]]
        pts = _sample_points()
        rB = bd.sampled_rank(bd.assemble_system(four), pts)
        rA = bd.sampled_matrix_rank(bd.reduced_variable_matrix(four), pts)
        rep = bd.sampled_rank(bd.assemble_system([four[0]] * 4), pts)
        return holds(rB == 5 and rA == 4 and rep < 5, f"rank B {rB}, rank A {rA}, repeated {rep}")

    checks.append(Check("canon.ranks", "lemma11", ranks))

    def table(seed):
        bad = {str(k): bd.tabulated_bd_mismatches(t) for k, t in _tensors().items()}
        bad = {k: v for k, v in bad.items() if v}
        if not bad:
            return Outcome(Verdict.PASS, note="tabulated display agrees with the derived rows")
        return Outcome(Verdict.DOCUMENTED, str(bad), "tabulated entries differ from the derived rows")

    checks.append(Check("canon.bd-table", "fundeqns12", table))

    checks.append(Check("canon.integrability", "int3''1",
                        lambda s: holds(it.obstructions_vanish(it.build_matrices(_printed_coefficients())))))

    def perturbed(seed):
        import dataclasses

        c = _printed_coefficients()
        x = c.registry.var("x")
        m = it.build_matrices(dataclasses.replace(c, A12=c.A12 + x))
        return holds(not it.obstructions_vanish(m), "perturbed tuple still integrable")

    checks.append(Check("canon.integrability-perturbed", "int3''1", perturbed))

    def relations(seed):
        c = _printed_coefficients()
        t = it.TenTuple.from_coefficients(c, check=False)
        return exact({n: getattr(c, n) - t[n] for n in ("B13", "C12", "C13", "C22", "C23")})

    checks.append(Check("canon.relations", "int11", relations))

    def dexpr(seed):
        c = _printed_coefficients()
        t = it.TenTuple.from_coefficients(c)
        D = it.d_closure(t)
        fitted = _fit().coefficients
        printed = exact({k: v - getattr(c, k) for k, v in D.items()})
        derived = exact({k: v - getattr(fitted, k) for k, v in D.items()})
        return documented(printed, derived, "fitted D is the arbiter")

    checks.append(Check("canon.d-quadratics", "Dexpressions", dexpr))

    def sphere_d(seed):
        c = _printed_coefficients()
        t = it.TenTuple.from_coefficients(c)
        sp = catalog.flat3()
        G = it.log_gradient(catalog.sphere_metric_factor(sp), sp.positions)
        grad = it.sphere_d_terms(t, G)
        grad_out = exact({k: v - getattr(c, k) for k, v in grad.items()})
        if grad_out.verdict is not Verdict.PASS:
            return grad_out
        I = it.flat_ideal(t)
        printed = exact({k: v - grad[k] for k, v in rf.sphere_d_from_ideal(I).items()})
        corrected = exact({k: v - grad[k] for k, v in rf.sphere_d_from_ideal_corrected(I).items()})
        return documented(printed, corrected,
                          "gradient column authoritative; D22 = -2/3 (I(b) + I(c)), D33 = -2/3 I(c)")

    checks.append(Check("canon.sphere-d-terms", "newDterms", sphere_d))

    def fifth(seed):
        r = fifth_symmetry_exhibit(seed)
        return holds(r.multipliers_ok and r.fifth_exists, str(r.ranks))

    checks.append(Check("canon.fifth-symmetry", "4implies5", fifth))
    return checks


# ---------------------------------------------------------------------------
# closure


def integrability_closure() -> list[Check]:
    from .. import catalog, closure, integrability as it, reference_forms as rf

    checks = []

    def derived(seed):
        cl = closure.derive_closure()
        return holds(cl.consistent and cl.rank == 35, f"rank {cl.rank}, residuals {len(cl.residuals)}")

    checks.append(Check("closure.derivation", "basicresult", derived))
    checks.append(Check("closure.mixed-partials", "basicresult",
                        lambda s: exact(closure.mixed_partial_defects(closure.derive_closure()))))
    checks.append(Check("closure.symmetry-equations", "symmetryeqnsc", lambda s: exact(closure.tabulated_symmetry_defects())))
    checks.append(Check("closure.obstruction1 printed", "obstruction1",
                        lambda s: exact([("after relations", closure.obstruction_after_relations(False))])))

    def obst_corrected(seed):
        return exact([
            ("corrected after relations", closure.obstruction_after_relations(True)),
            ("derived + corrected", closure.derived_obstruction()
             + rf.algebraic_obstruction_corrected(closure.coefficient_accessor(False), closure.a_val)),
        ])

    checks.append(Check("closure.obstruction1 corrected", "obstruction1", obst_corrected))
    checks.append(Check("closure.obstructions2-4", "obstruction2", lambda s: exact(closure.second_order_defects())))

    def a12(seed):
        cl = closure.derive_closure()
        printed = rf.a12_derivatives(closure.sym)
        return exact({f"d{k + 1} A12": closure.apply_int11(cl.dF[("A12", k + 1)] - printed[k]) for k in range(3)})

    checks.append(Check("closure.a12-derivatives", "basicresult", a12))

    def d_terms(seed):
        cl = closure.derive_closure()
        printed = rf.d_quadratics(closure.sym)
        return exact({k: cl.D[k] - printed[k] for k in printed})

    checks.append(Check("closure.d-terms", "Dexpressions", d_terms))

    def on_tuple(seed):
        t = it.TenTuple.from_coefficients(_printed_coefficients())
        return exact({str(k): v for k, v in it.derivative_closure(t).residuals(t).items()})

    checks.append(Check("closure.nondegenerate-tuple", "basicresult", on_tuple))

    def sym_printed(seed):
        c = _printed_coefficients()
        bad = {}
        for k, t in _tensors().items():
            r = it.symmetry_closure_check(c, t)
            if not r.ok:
                bad[str(k)] = "equations"
        return holds(not bad, str(bad))

    checks.append(Check("closure.symmetries-satisfy", "symmetryeqnsc", sym_printed))
    return checks


# ---------------------------------------------------------------------------
# flat ideal


def flat_ideal() -> list[Check]:
    from .. import bd_canonical as bd, catalog, closure, integrability as it

    checks = []

    def oscillator(seed):
        sp = catalog.flat3()
        sol = bd.fit_canonical(bd.PotentialFamily(sp, catalog.flat_oscillator_basis(sp)))
        if sol.classification != "nondegenerate":
            return Outcome(Verdict.FAIL, f"classification {sol.classification}")
        t = it.TenTuple.from_coefficients(sol.coefficients)
        return exact({f"I({k})": v for k, v in it.flat_ideal(t).items()})

    checks.append(Check("flat.oscillator", "ideal", oscillator))

    def violated(seed):
        t = it.TenTuple.from_coefficients(_printed_coefficients())
        I = it.flat_ideal(t)
        pt = {"x": 1, "y": 2, "z": 3}
        vals = {k: I[k].evaluate(pt) for k in "abcde"}
        return holds(any(vals.values()), "tuple lies in the flat ideal")

    checks.append(Check("flat.nondegenerate-violates", "ideal", violated))

    def pointwise(seed):
        pts = it.sample_ideal_zeros(20, seed)
        vals = it.sixth_generator_values(pts)
        bad = [v for v in vals if v]
        return holds(not bad, f"I(f) nonzero at {len(bad)} of {len(vals)} common zeros of I(a..e), e.g. {bad[0] if bad else None}")

    checks.append(Check("flat.sixth-generator pointwise", "ideal2", pointwise))

    def closed(seed):
        pts = it.sample_ideal_zeros(20, seed, closed=True)
        vals = it.sixth_generator_values(pts)
        return holds(not any(vals), str(vals))

    checks.append(Check("flat.sixth-generator closed locus", "ideal2", closed))

    def multiples(seed):
        # derivatives of I(a..e) along the closure, evaluated at plain zeros, all vanish together or not
        pts = it.sample_ideal_zeros(5, seed)
        conds = closure.flat_derivative_conditions()
        I = closure.flat_ideal_symbolic()
        ok = True
        for p in pts:
            f = I["f"].evaluate(p)
            vals = [c.evaluate(p) for c in conds.values()]
            if not f or not any(vals):
                ok = False
        return holds(ok, "derivative conditions and I(f) do not move together")

    checks.append(Check("flat.derivative-conditions", "ideal2", multiples))
    return checks


# ---------------------------------------------------------------------------
# Stackel


def stackel() -> list[Check]:
    from .. import bd_canonical as bd, catalog
    from ..phase_space import build_degenerate_system
    from .. import stackel as st

    checks = []

    def degenerate(seed):
        sysm = build_degenerate_system(3)
        sp = sysm.space
        U = 1 / sp.var("x3") ** 2
        rec = st.stackel_transform(sysm.hamiltonian, U)
        gens = list(sysm.P) + list(sysm.J.values()) + list(sysm.K) + [sysm.D]
        for S in gens:
            st.transform_symmetry(S, rec)  # raises on {S~, H~} != 0
        return holds(rec.metric_factor == U, f"metric factor {rec.metric_factor}")

    checks.append(Check("stackel.degenerate U=1/z^2", "stackelt", degenerate))

    def nondegenerate(seed):
        H = catalog.nondegenerate_hamiltonian()
        U = catalog.sphere_metric_factor()
        rec = st.stackel_transform(H, U)
        for k, S in sorted(catalog.nondegenerate_symmetries().items()):
            st.transform_symmetry(S, rec, name=str(k))
        return Outcome(Verdict.PASS)

    checks.append(Check("stackel.nondegenerate sphere", "specialpotential", nondegenerate))

    def coefficients(seed):
        sp = catalog.flat3()
        lam = catalog.sphere_metric_factor(sp)
        c = _printed_coefficients()
        ct = st.canonical_coefficients_transform(c, lam)
        res = {k: getattr(ct, k) for k in ("D12", "D13", "D22", "D23", "D33")}
        for j, V in enumerate(catalog.nondegenerate_basis(sp)):
            for pair, r in bd.canonical_residuals(ct, V / lam, sp.positions).items():
                res[f"basis {j + 1} eq {pair}"] = r
        family = bd.PotentialFamily(sp, tuple(V / lam for V in catalog.nondegenerate_basis(sp)))
        sol = bd.fit_canonical(family, check_integrability=False)
        if sol.coefficients is None:
            return Outcome(Verdict.FAIL, "transformed family not fitted")
        for k, v in sol.coefficients.as_dict().items():
            res[f"fit {k}"] = v - getattr(ct, k)
        return exact(res)

    checks.append(Check("stackel.transformed-coefficients", "veqn2a", coefficients))

    checks.append(Check("stackel.quantum curvature", "stackelt",
                        lambda s: Outcome(Verdict.SKIPPED, note="operator-level curvature correction not specified")))
    return checks


# ---------------------------------------------------------------------------
# pentaspherical / coordinates


def pentaspherical() -> list[Check]:
    from .. import pentaspherical as ps

    checks = []

    def ham(seed):
        fr = ps.frame()
        r, m1, m2 = ps.lifted_hamiltonian_identity()
        return exact([
            ("residual - m1 C1 - m2 C2", r - m1 * fr.C1 - m2 * fr.C2),
            ("normal form", ps.normal_form(r)),
        ])

    checks.append(Check("pent.hamiltonian-lift", "pentfreeHam", ham))
    checks.append(Check("pent.dictionary", "pentrestrict", lambda s: exact(ps.dictionary_residuals())))
    checks.append(Check("pent.so5", "pentrestrict", lambda s: exact({str(k): v for k, v in ps.so5_closure_defects().items()})))

    def reflection(seed):
        d = {n: (f, p) for n, f, p in ps.killing_dictionary()}
        res = {}
        for axis in "xyz":
            P = ps.lift(d[f"translation_{axis}"][0])
            K = ps.lift(d[f"special_{axis}"][0])
            R = ps.inversion_reflection(P)
            res[f"R(R(p_{axis}))"] = ps.inversion_reflection(R) - P
            res[f"R(p_{axis}) + K_{axis}"] = ps.normal_form(R + K)
        rot = ps.rotation(1, 2)
        res["rotation fixed"] = ps.inversion_reflection(rot) - rot
        return exact(res)

    checks.append(Check("pent.reflection", "inversion", reflection))

    def one_form(seed):
        full = ps.one_form_residuals(True)
        neg = ps.one_form_residuals(False)
        out = exact({f"dx{k + 1}": v for k, v in enumerate(full)})
        if out.verdict is not Verdict.PASS:
            return out
        return holds(any(not v.is_zero for v in neg), "identity survives without the C2 elimination")

    checks.append(Check("pent.one-form", "pentrestrict", one_form))

    def project(seed):
        from fractions import Fraction as F
        from ..algebra import I

        a = ps.project_point((1, 2, 3, 4, -I))
        b = ps.project_point((1, 2, 3, F(1, 2), -I / 2))
        try:
            ps.project_point((1, 2, 3, 1, I))
            pole = False
        except ps.PoleError:
            pole = True
        ok = a == (F(-1, 5), F(-2, 5), F(-3, 5)) and b == (-1, -2, -3)
        return holds(ok and pole, f"{a}, {b}, pole {pole}")

    def cartesian_frame(seed):
        from fractions import Fraction as F
        from ..algebra import I

        b = ps.project_point((1, 2, 3, F(1, 2), -I / 2))
        return holds(b == (1, 2, 3), f"(1,2,3,1/2,-i/2) projects to {tuple(str(v) for v in b)}")

    checks.append(Check("pent.project-point cartesian frame printed", "pentasphericalcoords", cartesian_frame))
    checks.append(Check("pent.project-point", "pentasphericalcoords", project))
    checks.append(Check("pent.projective-identities", "pentaspericalident", lambda s: exact(enumerate(ps.projective_identities()))))

    def derivs(seed):
        derived, printed = ps.derivative_relations()
        res = {f"d/d{v}[{k + 1}]": derived[v][k] - printed[v][k] for v in derived for k in range(5)}
        out = exact(res)
        if out.verdict is Verdict.PASS:
            return out
        # the chain rule itself is the arbiter: check it against a test function
        return Outcome(Verdict.DOCUMENTED, out.residual, "rows for Y and Z lead with 2T d/dx2 and 2T d/dx3")

    checks.append(Check("pent.derivative-relations", "projectivecords", derivs))

    def homogeneity(seed):
        from .. import catalog

        sp = catalog.flat3()
        x, y, z = (sp.var(n) for n in sp.positions)
        tests = [x / y, 1 / x**2 + z, x * x + y * y + z * z, (x + z) / (1 + y * y)]
        return exact(enumerate(ps.homogeneity_residuals(tests)))

    checks.append(Check("pent.homogeneity", "pentfreeHam", homogeneity))
    return checks


def coordinates() -> list[Check]:
    from .. import pentaspherical as ps

    checks = []
    ids = lru_cache(maxsize=None)(ps.coordinate_identities)
    labels = {
        "(i) sphere": ("coords.(i) sphere", "ellipsoidalcoords"),
        "(i) sphere, printed sign": ("coords.(i) sphere printed sign", "ellipsoidalcoords"),
        "(ii) null cone": ("coords.(ii) null cone", "nullcone"),
        "(iii) quadric": ("coords.(iii) quadric", "nullcone"),
        "(iv) stereographic": ("coords.(iv) stereographic", "metric"),
        "(v) conformal factor, printed": ("coords.(v) conformal factor printed", "cycydicmetric"),
        "(v) conformal factor, corrected": ("coords.(v) conformal factor corrected", "cycydicmetric"),
    }
    for key, (name, anchor) in labels.items():
        checks.append(Check(name, anchor, lambda s, key=key: exact([(key, ids()[key])])))

    def collision(seed):
        idx = ps.collision_check(2, 3)
        if idx is None:
            return Outcome(Verdict.FAIL, "no pole detected at e2 = e3")
        return Outcome(Verdict.SKIPPED, note=f"e2 = e3 puts a pole in x{idx + 1}^2; identity not checked there")

    checks.append(Check("coords.collision e2=e3", "nullcone", collision))
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "volkmer-n2": volkmer_n2,
    "volkmer-n3": volkmer_n3,
    "nondegenerate-canon": nondegenerate_canon,
    "integrability-closure": integrability_closure,
    "flat-ideal": flat_ideal,
    "stackel": stackel,
    "pentaspherical": pentaspherical,
    "coordinates": coordinates,
}


def suite(name: str) -> list[Check]:
    try:
        factory = SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None
    return factory()
