"""
Infrastructure components: logging setup and replay metrics.
"""

from .monitoring import LoggingManager, ReplayMetrics, configure_logging

__all__ = [
    "LoggingManager",
    "ReplayMetrics",
    "configure_logging",
]
