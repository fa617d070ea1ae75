"""Execution of builtin suites and scenarios."""

from __future__ import annotations

from ..diffop import DiffOperator, commutator, is_conformal_symmetry_op, op_mod_H
from ..phase_space import PhaseFunction, is_conformal_symmetry, poisson_bracket, reduce_mod_hamiltonian
from .checks import Check, exact, holds, run_checks
from .report import Outcome, Verdict, VerificationReport
from .scenario import ConfigurationError, Scenario, ScenarioCheck
from .suites import UnknownSuite, suite


def run_suite(name: str, seed: int = 0, stable: bool = False) -> VerificationReport:
    try:
        checks = suite(name)
    except UnknownSuite:
        raise ConfigurationError(f"unknown suite {name!r}") from None
    return VerificationReport(name, seed, run_checks(checks, seed, stable))


def _same_kind(a, b, what):
    if isinstance(a, DiffOperator) != isinstance(b, DiffOperator):
        raise TypeError(f"{what}: mixing differential operators with functions")


def _evaluate(c: ScenarioCheck, space, seed: int) -> Outcome:
    a = c.args

    def fn(v):
        return PhaseFunction.coerce(space, v)

    if c.op == "zero":
        return exact([(c.name, a["expr"])])
    if c.op == "equal":
        _same_kind(a["lhs"], a["rhs"], c.name)
        return exact([("lhs - rhs", a["lhs"] - a["rhs"])])
    if c.op == "conformal_symmetry":
        S, H = a["symmetry"], a["hamiltonian"]
        _same_kind(S, H, c.name)
        if isinstance(S, DiffOperator):
            return holds(is_conformal_symmetry_op(S, H) is not None, "nonzero remainder of [S, H] modulo H")
        S, H = fn(S), fn(H)
        return holds(is_conformal_symmetry(S, H) is not None, "{S, H} is not a multiple of H")
    if c.op == "commute":
        x, y = a["a"], a["b"]
        _same_kind(x, y, c.name)
        if isinstance(x, DiffOperator):
            return exact([("[a, b]", commutator(x, y))])
        return exact([("{a, b}", poisson_bracket(fn(x), fn(y)))])
    if c.op == "mod_hamiltonian":
        X, H = a["expr"], a["hamiltonian"]
        _same_kind(X, H, c.name)
        if isinstance(X, DiffOperator):
            return exact([("remainder", op_mod_H(X, H)[1])])
        return exact([("remainder", reduce_mod_hamiltonian(fn(X), fn(H)))])
    if c.op == "canonical_fit":
        from ..bd_canonical import PotentialFamily, fit_canonical

        sol = fit_canonical(PotentialFamily(space, tuple(a["basis"])))
        return holds(sol.classification == a["classification"], f"classification {sol.classification}")
    if c.op == "builtin":
        chk = next(x for x in suite(a["suite"]) if x.name == a["check"])
        rec = chk.execute(seed)
        return Outcome(rec.verdict, rec.residual, rec.note)
    raise ConfigurationError(f"unknown op {c.op!r}")


def run_scenario(sc: Scenario, seed: int = 0, stable: bool = False) -> VerificationReport:
    def make(c: ScenarioCheck) -> Check:
        def run(s):
            out = _evaluate(c, sc.space, s)
            if c.expect == "fail":
                if out.verdict is Verdict.FAIL:
                    return Outcome(Verdict.PASS, out.residual, "expected failure reproduced")
                if out.verdict is Verdict.PASS:
                    return Outcome(Verdict.FAIL, None, "expected a failure, identity holds")
            return out

        return Check(c.name, c.anchor, run)

    return VerificationReport(sc.name, seed, run_checks([make(c) for c in sc.checks], seed, stable))
