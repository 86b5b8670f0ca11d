"""
Tilt to pointer-delta mapping (rate control)

Tilt relative to the calibrated neutral pose sets the cursor velocity: zero inside
the dead zone, then linear in the excess angle, clamped to one report's range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .config import AxisMap, MappingConfig, MountConfig
from .orientation import TiltAngles, wrap_degrees

MAX_COUNT = 127


@dataclass(frozen=True)
class NeutralPose:
    """Head pose that produces zero cursor motion"""
    pitch0: float
    roll0: float

    def __post_init__(self) -> None:
        # same ranges as TiltAngles
        TiltAngles(self.pitch0, self.roll0)


@dataclass(frozen=True)
class PointerDelta:
    dx: int = 0
    dy: int = 0

    def __post_init__(self) -> None:
        if not (-MAX_COUNT <= self.dx <= MAX_COUNT and -MAX_COUNT <= self.dy <= MAX_COUNT):
            raise ValueError(f"delta out of range: ({self.dx}, {self.dy})")

    @property
    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0


def set_neutral(t: TiltAngles) -> NeutralPose:
    return NeutralPose(pitch0=t.pitch, roll0=t.roll)


def _round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def axis_count(rel: float, cfg: MappingConfig) -> int:
    """Counts for one axis given its relative angle in degrees"""
    magnitude = abs(rel)
    if magnitude <= cfg.dead_zone:
        return 0
    count = _round_half_away((magnitude - cfg.dead_zone) * cfg.gain)
    count = min(count, cfg.max_count)
    return count if rel > 0 else -count


def map_tilt_to_delta(t: TiltAngles, n: NeutralPose, mc: MountConfig, cfg: MappingConfig) -> PointerDelta:
    """Per-tick cursor displacement for the current tilt"""
    pitch_count = axis_count(wrap_degrees(t.pitch - n.pitch0), cfg)
    roll_count = axis_count(wrap_degrees(t.roll - n.roll0), cfg)

    if mc.axis_map == AxisMap.PITCH_VERTICAL:
        horizontal, vertical = roll_count, pitch_count
    else:
        horizontal, vertical = pitch_count, roll_count

    return PointerDelta(dx=mc.sign_x * horizontal, dy=mc.sign_y * vertical)
