"""Verification harness: expression parsing, scenarios, builtin suites and the command line."""

from .parser import ParseError, UnknownIdentifier, parse_expression
from .report import CheckRecord, Outcome, Verdict, VerificationReport
from .runner import ConfigurationError, run_scenario, run_suite
from .scenario import Scenario, load_scenario
from .suites import SUITES, UnknownSuite

__all__ = [
    "CheckRecord",
    "ConfigurationError",
    "Outcome",
    "ParseError",
    "SUITES",
    "Scenario",
    "UnknownIdentifier",
    "UnknownSuite",
    "Verdict",
    "VerificationReport",
    "load_scenario",
    "parse_expression",
    "run_scenario",
    "run_suite",
]
