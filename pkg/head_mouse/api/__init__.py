"""
Command-line interface for the head mouse simulator.
"""

from .cli import cli, main, run_cli

__all__ = [
    "cli",
    "main",
    "run_cli",
]
