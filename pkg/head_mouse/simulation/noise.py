"""
Reproducible sensor noise

SplitMix64 streams feed a Box-Muller transform. Every step is integer or
IEEE-754 double arithmetic in a fixed order, so the same seed yields the same
trace on any platform.
"""
from __future__ import annotations

import math
from typing import Dict, List

import structlog

from ..core.types import INT16_MAX, INT16_MIN
from .trace import COUNT_FIELDS, Trace, TraceRow

logger = structlog.get_logger(__name__)

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / (1 << 53)

CLAMP_SIGMAS = 3.0


class SplitMix64:
    """64-bit SplitMix generator"""
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + _GOLDEN_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Double in [0, 1) from the top 53 bits"""
        return (self.next() >> 11) * _INV_2_53

    def gaussian(self) -> float:
        """Standard normal via Box-Muller (cosine branch, one pair of uniforms per draw)"""
        u1 = 1.0 - self.uniform()  # (0, 1]
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def field_streams(seed: int) -> Dict[str, SplitMix64]:
    """One independent stream per count field, seeded from a root stream in field order"""
    root = SplitMix64(seed)
    return {name: SplitMix64(root.next()) for name in COUNT_FIELDS}


def noise_sample(stream: SplitMix64, sigma_counts: float) -> int:
    """Integer noise, clamped to +-3 sigma"""
    z = max(-CLAMP_SIGMAS, min(CLAMP_SIGMAS, stream.gaussian()))
    return round_half_away(sigma_counts * z)


def inject_noise(tr: Trace, seed: int, sigma_counts: float) -> Trace:
    """
    Add zero-mean Gaussian noise to the accel and gyro counts of every row

    Raises:
        ValueError: If sigma_counts < 0
    """
    if sigma_counts < 0:
        raise ValueError(f"sigma_counts must be >= 0, got {sigma_counts}")
    if sigma_counts == 0:
        return tr

    streams = field_streams(seed)
    rows: List[TraceRow] = []
    for row in tr:
        updates = {}
        for name in COUNT_FIELDS:
            value = getattr(row, name) + noise_sample(streams[name], sigma_counts)
            updates[name] = max(INT16_MIN, min(INT16_MAX, value))
        rows.append(row.model_copy(update=updates))

    logger.debug("Noise injected", seed=seed, sigma_counts=sigma_counts, rows=len(rows))
    return Trace(tuple(rows))
