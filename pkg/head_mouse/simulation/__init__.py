"""
Trace replay: trace files, noise injection, replay engine, cursor metrics,
feature matrix and synthetic scenarios.
"""

from .features import feature_matrix
from .noise import inject_noise
from .replay import integrate_cursor, run_replay, static_jitter
from .trace import Trace, TraceRow, load_trace, save_trace

__all__ = [
    "Trace",
    "TraceRow",
    "load_trace",
    "save_trace",
    "inject_noise",
    "run_replay",
    "integrate_cursor",
    "static_jitter",
    "feature_matrix",
]
