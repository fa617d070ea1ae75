import json
from pathlib import Path

import pytest

from confsuper.algebra import I
from confsuper.diffop import DiffOperator
from confsuper.harness import cli
from confsuper.harness.parser import ParseError, UnknownIdentifier, parse_expression
from confsuper.harness.report import CheckRecord, Verdict, VerificationReport
from confsuper.harness.runner import run_scenario, run_suite
from confsuper.harness.scenario import ConfigurationError, load_scenario, scenario_from_dict
from confsuper.harness.suites import SUITES
from confsuper.phase_space import PhaseFunction, PhaseSpace

SP = PhaseSpace.standard(("x", "y"), ("a",), ("px", "py"))
DEMO = Path(__file__).resolve().parent.parent / "demos" / "scenarios" / "inverse_square.json"
REG = {"positions": ["x", "y"], "parameters": ["a"], "momenta": ["px", "py"]}


# parser

def test_parse_rational_function():
    v = parse_expression("x^2 + a/y", SP)
    x, y, a = SP.var("x"), SP.var("y"), SP.var("a")
    assert v == x**2 + a / y


def test_indexed_momenta_and_names_agree():
    v = parse_expression("p[1]^2 + px*py", SP)
    assert isinstance(v, PhaseFunction)
    assert v == parse_expression("px^2 + p[1]*p[2]", SP)


def test_indexed_derivatives_compose():
    v = parse_expression("d[1]*d[1] + x*d[2]", SP)
    assert isinstance(v, DiffOperator)
    assert v.order() == 2
    assert str(v) == "(1)*d[1]^2 + (x)*d[2]"


def test_imaginary_unit():
    assert parse_expression("i*x", SP) == I * SP.var("x")


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_expression("x +\n  * y", SP)
    assert (exc.value.line, exc.value.column) == (2, 3)


@pytest.mark.parametrize(
    "text, message",
    [
        ("p[3]", "index 3 out of range"),
        ("x^y", "exponent must be"),
        ("x^-1", "exponent must be"),
        ("(x", r"expected '\)'"),
        ("1/0", "division by zero"),
        ("d[1]*px", "cannot combine"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_expression(text, SP)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as exc:
        parse_expression("q + 1", SP)
    assert exc.value.column == 1


def test_environment_bindings():
    env = {"H": parse_expression("px^2 + py^2", SP)}
    assert parse_expression("2*H", SP, env) == parse_expression("2*px^2 + 2*py^2", SP)


# scenarios

def test_demo_scenario_loads():
    sc = load_scenario(DEMO)
    assert sc.name == "inverse-square"
    assert len(sc.checks) == 7
    assert {"H", "J12", "D"} <= set(sc.bindings)


@pytest.mark.parametrize(
    "data, message",
    [
        ([], "must be a JSON object"),
        ({"checks": {}}, "'checks' must be a list"),
        ({"bindings": {"H": "x"}}, "bindings need a registry"),
        ({"registry": REG, "checks": [{"op": "zero"}]}, "missing 'name'"),
        ({"registry": REG, "checks": [{"name": "a", "op": "nope"}]}, "unknown op"),
        ({"registry": REG, "checks": [{"name": "a", "op": "zero"}]}, "missing 'expr'"),
        ({"registry": REG, "checks": [{"name": "a", "op": "zero", "args": {"expr": "x +"}}]}, "line 1"),
        ({"registry": REG, "checks": [{"name": "a", "op": "zero", "args": {"expr": "0"}, "expect": "maybe"}]}, "expect"),
        ({"registry": REG, "checks": [{"name": "a", "op": "zero", "args": {"expr": "0"}}] * 2}, "duplicate"),
        ({"checks": [{"name": "a", "op": "builtin", "args": {"suite": "nope", "check": "x"}}]}, "unknown suite"),
        ({"checks": [{"name": "a", "op": "builtin", "args": {"suite": "stackel", "check": "x"}}]}, "has no check"),
    ],
)
def test_scenario_validation(data, message):
    with pytest.raises(ConfigurationError, match=message):
        scenario_from_dict(data)


def test_invalid_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"name": \n  oops}')
    with pytest.raises(ConfigurationError, match="line 2"):
        load_scenario(p)


def test_empty_scenario_passes():
    rep = run_scenario(scenario_from_dict({"name": "empty"}))
    assert rep.checks == [] and rep.ok and rep.exit_code == 0


def test_expected_failure_inverts_the_verdict():
    data = {
        "registry": REG,
        "checks": [
            {"name": "holds", "op": "zero", "args": {"expr": "x - x"}, "expect": "fail"},
            {"name": "breaks", "op": "zero", "args": {"expr": "x"}, "expect": "fail"},
        ],
    }
    rep = run_scenario(scenario_from_dict(data))
    verdicts = {c.name: c.verdict for c in rep.checks}
    assert verdicts == {"holds": Verdict.FAIL, "breaks": Verdict.PASS}


def test_mixed_kinds_fail_the_check():
    data = {"registry": REG, "checks": [{"name": "mix", "op": "equal", "args": {"lhs": "d[1]", "rhs": "x"}}]}
    rep = run_scenario(scenario_from_dict(data))
    assert rep.checks[0].verdict is Verdict.FAIL


# reports

def test_report_json_shape():
    rep = VerificationReport("s", 3, [
        CheckRecord("b", "k", Verdict.FAIL, 5, residual="x"),
        CheckRecord("a", "k", Verdict.DOCUMENTED, 1),
    ])
    body = json.loads(rep.to_json())
    assert body["suite"] == "s" and body["seed"] == 3
    assert [c["name"] for c in body["checks"]] == ["a", "b"]
    assert body["checks"][0] == {"name": "a", "anchor": "k", "verdict": "discrepancy-documented", "elapsed_ms": 1}
    assert body["checks"][1]["residual"] == "x"
    assert not rep.ok and rep.exit_code == 1


def test_documented_and_skipped_count_as_ok():
    assert Verdict.DOCUMENTED.ok and Verdict.SKIPPED.ok and not Verdict.FAIL.ok


def test_unknown_suite_is_a_configuration_error():
    with pytest.raises(ConfigurationError):
        run_suite("no-such-suite")


def test_every_check_has_a_unique_name_and_anchor():
    for name, factory in SUITES.items():
        checks = factory()
        assert checks, name
        assert len({c.name for c in checks}) == len(checks)
        assert all(c.anchor for c in checks)


# command line

def test_cli_list(capsys):
    assert cli.main(["--list"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in SUITES)
    assert "n3.casimir  [conformalident1]" in out


def test_cli_passing_suite_with_documented_discrepancy(capsys):
    assert cli.main(["verify", "volkmer-n3"]) == 0
    assert "DISCREPANCY-DOCUMENTED" in capsys.readouterr().out


def test_cli_failing_suite(capsys):
    assert cli.main(["verify", "flat-ideal"]) == 1
    assert "FAIL" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify", "no-such-suite"],
        ["verify", "stackel", "--format", "xml"],
        ["verify", "stackel", "--seed", "-1"],
        ["run", "/nonexistent/scenario.json"],
        ["frobnicate"],
    ],
)
def test_cli_configuration_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_cli_unwritable_report(tmp_path, capsys):
    assert cli.main(["verify", "stackel", "--report", str(tmp_path / "missing" / "r.json")]) == 2


def test_cli_run_scenario(capsys):
    assert cli.main(["run", str(DEMO)]) == 0
    assert "expected failure reproduced" in capsys.readouterr().out


def test_cli_json_report_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert cli.main(["verify", "volkmer-n3", "--format", "json", "--stable", "--seed", "11", "--report", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    body = json.loads(paths[0].read_text())
    assert body["suite"] == "volkmer-n3" and body["seed"] == 11
    assert all(c["elapsed_ms"] == 0 for c in body["checks"])
    assert {c["verdict"] for c in body["checks"]} == {"pass", "discrepancy-documented"}
