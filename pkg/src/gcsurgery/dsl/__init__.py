from .parser import (EXPECT_KEYS, ScenarioScript, ScenarioSyntaxError, format_scenario,
                     parse_scenario)
from .report import emit_human, emit_json, emit_report, result_json, state_json
from .runner import (ExpectationResult, ScenarioError, ScenarioResult, Verdict,
                     check_expectation, execute_scenario)

__all__ = [
    "EXPECT_KEYS", "ScenarioScript", "ScenarioSyntaxError", "format_scenario", "parse_scenario",
    "emit_human", "emit_json", "emit_report", "result_json", "state_json",
    "ExpectationResult", "ScenarioError", "ScenarioResult", "Verdict", "check_expectation",
    "execute_scenario",
]
