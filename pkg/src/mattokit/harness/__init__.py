"""Scenario-driven verification harness."""

from .checks import CATALOGUE, CHECKS, Check, Context, select_checks
from .report import CheckRecord, Report
from .runner import SWEEP_COLUMNS, SWEEP_PARAMS, demo_scalar, rows_to_csv, run_scenario, sweep
from .scenario import DEFAULT_TOL, Scenario, ScenarioError, load_scenario, parse_scenario, substream

__all__ = [
    "CATALOGUE",
    "CHECKS",
    "Check",
    "CheckRecord",
    "Context",
    "DEFAULT_TOL",
    "Report",
    "SWEEP_COLUMNS",
    "SWEEP_PARAMS",
    "Scenario",
    "ScenarioError",
    "demo_scalar",
    "load_scenario",
    "parse_scenario",
    "rows_to_csv",
    "run_scenario",
    "select_checks",
    "substream",
    "sweep",
]
