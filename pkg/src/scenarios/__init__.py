"""
Scenario runner: builtin and user scenarios, solver dispatch and result files
"""

from scenarios.config import (
    Scenario,
    ScenarioPoint,
    SweepSpec,
    apply_overrides,
    auto_dim,
    get_builtin,
    list_builtin_names,
    load_builtins,
    load_scenario_file,
    parse_scenario,
    reload_builtins,
    resolve_scenario,
)
from scenarios.summary import RunSummary, PulseWindowStats, summarize, sweep_curve
from scenarios.runner import RunReport, ScenarioRunner, generate_builtins, list_scenarios, series_to_csv

__all__ = [
    "Scenario",
    "ScenarioPoint",
    "SweepSpec",
    "apply_overrides",
    "auto_dim",
    "get_builtin",
    "list_builtin_names",
    "load_builtins",
    "load_scenario_file",
    "parse_scenario",
    "reload_builtins",
    "resolve_scenario",
    "RunSummary",
    "PulseWindowStats",
    "summarize",
    "sweep_curve",
    "RunReport",
    "ScenarioRunner",
    "generate_builtins",
    "list_scenarios",
    "series_to_csv",
]
