"""Experiment campaigns, persistence and statistics."""

from .experiment import ExperimentConfig, run_experiment
from .stats import TestResult, summarize, wilcoxon_signed_rank

__all__ = ["ExperimentConfig", "run_experiment", "TestResult", "summarize", "wilcoxon_signed_rank"]
