"""Configuration, Monte Carlo runner, verification suite and command line."""

from .config import ConfigError, ExperimentConfig, load_config
from .runner import (
    ExperimentResult,
    SweepResult,
    TrialRecord,
    run_experiment,
    run_sweep,
    run_trial,
)
from .verify import CheckResult, SuiteReport, verify_suite

__all__ = [
    "CheckResult", "ConfigError", "ExperimentConfig", "ExperimentResult", "SuiteReport",
    "SweepResult", "TrialRecord", "load_config", "run_experiment", "run_sweep", "run_trial",
    "verify_suite",
]
