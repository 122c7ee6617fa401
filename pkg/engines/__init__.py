"""
Движки исполнения: траектории, поиск, точный анализ, Монте-Карло, режимы.
"""
from engines.exact import (
    FORWARD,
    REGENERATIVE,
    ProbabilityReport,
    RoundStats,
    exact_probability,
    report_from_round,
)
from engines.modes import classify_mode
from engines.montecarlo import MCEstimate, monte_carlo, sample_once, wilson_interval
from engines.search import SearchResult, explore_nondeterministic
from engines.semantics import ACCEPT, MOVE, REJECT, RESET, RESTART, Branch, Stepper
from engines.trajectory import RUNNING, RunResult, run_deterministic, run_scripted, sampling_chooser

__all__ = [
    "ACCEPT",
    "FORWARD",
    "MOVE",
    "REGENERATIVE",
    "REJECT",
    "RESET",
    "RESTART",
    "RUNNING",
    "Branch",
    "MCEstimate",
    "ProbabilityReport",
    "RoundStats",
    "RunResult",
    "SearchResult",
    "Stepper",
    "classify_mode",
    "exact_probability",
    "explore_nondeterministic",
    "monte_carlo",
    "report_from_round",
    "run_deterministic",
    "run_scripted",
    "sample_once",
    "sampling_chooser",
    "wilson_interval",
]
