"""JSON scenario files: a registry, named expression bindings and a list of checks.

Example::

    {
      "name": "inverse-square",
      "registry": {"positions": ["x", "y", "z"], "parameters": ["a1", "a2", "a3"],
                   "momenta": ["px", "py", "pz"]},
      "bindings": {"H": "p[1]^2 + p[2]^2 + p[3]^2 + a1/x^2 + a2/y^2 + a3/z^2",
                   "P1": "px^2 + a1/x^2"},
      "checks": [{"name": "P1", "op": "conformal_symmetry",
                  "args": {"symmetry": "P1", "hamiltonian": "H"}, "anchor": "Laplace1"}]
    }

Argument strings are parsed as expressions in which earlier bindings may be
used by name.  ``expect`` is ``"pass"`` (default) or ``"fail"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..phase_space import PhaseSpace
from .parser import ParseError, parse_expression


class ConfigurationError(ValueError):
    pass


# op name -> (expression arguments, other required arguments)
OPS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "zero": (("expr",), ()),
    "equal": (("lhs", "rhs"), ()),
    "conformal_symmetry": (("symmetry", "hamiltonian"), ()),
    "commute": (("a", "b"), ()),
    "mod_hamiltonian": (("expr", "hamiltonian"), ()),
    "canonical_fit": ((), ("basis", "classification")),
    "builtin": ((), ("suite", "check")),
}


@dataclass(frozen=True)
class ScenarioCheck:
    name: str
    op: str
    args: dict
    anchor: str
    expect: str = "pass"


@dataclass
class Scenario:
    name: str
    space: PhaseSpace | None
    bindings: dict = field(default_factory=dict)
    checks: list[ScenarioCheck] = field(default_factory=list)


def _require(d: dict, key: str, where: str, kind=None) -> Any:
    if key not in d:
        raise ConfigurationError(f"{where}: missing {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise ConfigurationError(f"{where}: {key!r} must be {kind.__name__}")
    return v


def _parse(text, space, env, where):
    if not isinstance(text, str):
        raise ConfigurationError(f"{where}: expected an expression string")
    try:
        return parse_expression(text, space, env)
    except ParseError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ConfigurationError("scenario must be a JSON object")
    name = data.get("name", "scenario")
    checks_raw = data.get("checks", [])
    if not isinstance(checks_raw, list):
        raise ConfigurationError("'checks' must be a list")
    reg = data.get("registry")
    space = None
    if reg is not None:
        if not isinstance(reg, dict):
            raise ConfigurationError("'registry' must be an object")
        try:
            space = PhaseSpace.standard(
                tuple(reg.get("positions", ())),
                tuple(reg.get("parameters", ())),
                tuple(reg["momenta"]) if "momenta" in reg else None,
                tuple(reg.get("auxiliary", ())),
            )
        except (ValueError, KeyError) as exc:
            raise ConfigurationError(f"registry: {exc}") from None
    env: dict = {}
    bindings_raw = data.get("bindings", {})
    if not isinstance(bindings_raw, dict):
        raise ConfigurationError("'bindings' must be an object")
    for key, text in bindings_raw.items():
        if space is None:
            raise ConfigurationError("bindings need a registry")
        env[key] = _parse(text, space, env, f"binding {key!r}")
    checks = []
    seen = set()
    for k, raw in enumerate(checks_raw):
        where = f"check #{k + 1}"
        if not isinstance(raw, dict):
            raise ConfigurationError(f"{where}: must be an object")
        cname = _require(raw, "name", where, str)
        where = f"check {cname!r}"
        if cname in seen:
            raise ConfigurationError(f"{where}: duplicate check name")
        seen.add(cname)
        op = _require(raw, "op", where, str)
        if op not in OPS:
            raise ConfigurationError(f"{where}: unknown op {op!r}")
        args_raw = raw.get("args", {})
        if not isinstance(args_raw, dict):
            raise ConfigurationError(f"{where}: 'args' must be an object")
        expr_args, other = OPS[op]
        args = {}
        for a in expr_args:
            if space is None:
                raise ConfigurationError(f"{where}: expression arguments need a registry")
            args[a] = _parse(_require(args_raw, a, where), space, env, f"{where} argument {a!r}")
        for a in other:
            args[a] = _require(args_raw, a, where)
        if op == "canonical_fit":
            if space is None or not isinstance(args["basis"], list):
                raise ConfigurationError(f"{where}: 'basis' must be a list and a registry is required")
            args["basis"] = [_parse(t, space, env, f"{where} basis") for t in args["basis"]]
        if op == "builtin":
            from .suites import SUITES

            if args["suite"] not in SUITES:
                raise ConfigurationError(f"{where}: unknown suite {args['suite']!r}")
            names = {c.name for c in SUITES[args["suite"]]()}
            if args["check"] not in names:
                raise ConfigurationError(f"{where}: suite {args['suite']!r} has no check {args['check']!r}")
        expect = raw.get("expect", "pass")
        if expect not in ("pass", "fail"):
            raise ConfigurationError(f"{where}: expect must be 'pass' or 'fail'")
        checks.append(ScenarioCheck(cname, op, args, str(raw.get("anchor", "scenario")), expect))
    return Scenario(str(name), space, env, checks)


def load_scenario(path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigurationError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return scenario_from_dict(data)
