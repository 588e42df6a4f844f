"""Experiment orchestration: configs, replica runs, reports, CLI."""

from .config import ConfigError, ExperimentConfig, load_config
from .experiments import compare, run, simulate
from .parallel import map_replicas, resolve_threads
from .report import (build_report, read_samples, summary_lines, write_report,
                     write_samples)

__all__ = [
    "ConfigError", "ExperimentConfig", "load_config",
    "compare", "run", "simulate",
    "map_replicas", "resolve_threads",
    "build_report", "read_samples", "summary_lines", "write_report",
    "write_samples",
]
