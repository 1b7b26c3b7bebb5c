"""
Experiment harness: training loop, metrics, sweeps and result files.
"""

from .config_loader import load_config, load_config_dir, parse_config
from .experiment import NegotiationExperiment, run_experiment
from .metrics import epsilon_schedule, normalized_series, summarize_window
from .results_writer import ResultsWriter, metrics_frame, read_metrics
from .sweep import SweepResult, SweepRunner, sweep

__all__ = [
    "NegotiationExperiment",
    "ResultsWriter",
    "SweepResult",
    "SweepRunner",
    "epsilon_schedule",
    "load_config",
    "load_config_dir",
    "metrics_frame",
    "normalized_series",
    "parse_config",
    "read_metrics",
    "run_experiment",
    "summarize_window",
    "sweep",
]
