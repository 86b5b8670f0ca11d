"""
Synthetic traces for the replay experiments

All generators place the head at a neutral pose on row 0 (the controller
captures its neutral there) and use the controller's tick period for spacing.
"""
from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

import structlog

from ..core.config import AxisMap, ControllerConfig, ScreenConfig
from ..core.controller import ControllerState, init_controller, tick
from ..core.device_model import (
    BURST_LENGTH,
    REG_ACCEL_XOUT_H,
    RegisterFile,
    decode_burst,
    emulate_read,
    load_sample,
    raw_to_physical,
)
from ..core.types import INT16_MAX, INT16_MIN
from .noise import round_half_away
from .trace import Trace, TraceRow

logger = structlog.get_logger(__name__)

TickRange = Tuple[int, int]


def tilt_to_counts(pitch_deg: float, roll_deg: float, accel_sensitivity: float = 16384.0) -> Tuple[int, int, int]:
    """Accelerometer counts of a 1 g gravity vector seen at the given tilt"""
    p = math.radians(pitch_deg)
    r = math.radians(roll_deg)
    components = (-math.sin(p), math.cos(p) * math.sin(r), math.cos(p) * math.cos(r))
    return tuple(max(INT16_MIN, min(INT16_MAX, round_half_away(c * accel_sensitivity))) for c in components)


def _row(
    t_ms: int,
    counts: Tuple[int, int, int],
    pedal_l: int = 0,
    pedal_r: int = 0,
    a_attached: int = 1,
    b_attached: int = 1,
) -> TraceRow:
    ax, ay, az = counts
    return TraceRow(
        t_ms=t_ms, ax=ax, ay=ay, az=az,
        pedal_l=pedal_l, pedal_r=pedal_r, a_attached=a_attached, b_attached=b_attached,
    )


def _in_ranges(index: int, ranges: Iterable[TickRange]) -> bool:
    return any(start <= index < stop for start, stop in ranges)


def static_trace(duration_ms: int = 10_000, cfg: Optional[ControllerConfig] = None,
                 pitch_deg: float = 0.0, roll_deg: float = 0.0) -> Trace:
    """Motionless head for `duration_ms`, both accessories attached, no pedals"""
    cfg = cfg or ControllerConfig()
    period = cfg.tick_period_ms
    counts = tilt_to_counts(pitch_deg, roll_deg, cfg.scale.accel_sensitivity)
    return Trace(tuple(_row(i * period, counts) for i in range(duration_ms // period + 1)))


def tilt_hold_trace(pitch_deg: float, roll_deg: float, hold_ms: int, cfg: Optional[ControllerConfig] = None,
                    rest_ms: int = 200) -> Trace:
    """Rest at neutral, hold a tilt for `hold_ms`, then rest again"""
    cfg = cfg or ControllerConfig()
    period = cfg.tick_period_ms
    neutral = tilt_to_counts(0.0, 0.0, cfg.scale.accel_sensitivity)
    tilted = tilt_to_counts(pitch_deg, roll_deg, cfg.scale.accel_sensitivity)
    rest_ticks = rest_ms // period
    hold_ticks = hold_ms // period

    rows = []
    for i in range(2 * rest_ticks + hold_ticks + 1):
        holding = rest_ticks < i <= rest_ticks + hold_ticks
        rows.append(_row(i * period, tilted if holding else neutral))
    return Trace(tuple(rows))


def press_during_motion_trace(cfg: Optional[ControllerConfig] = None, tilt_deg: float = 10.0,
                              motion_ms: int = 1000, press_offset_ms: int = 300, press_ms: int = 200,
                              rest_ms: int = 500, pedal: str = 'L') -> Trace:
    """
    A pedal press that starts and ends while the head is tilted

    The press sits well inside the motion so that the cursor moves on every
    tick the pedal is down.
    """
    cfg = cfg or ControllerConfig()
    period = cfg.tick_period_ms
    neutral = tilt_to_counts(0.0, 0.0, cfg.scale.accel_sensitivity)
    tilted = tilt_to_counts(0.0, tilt_deg, cfg.scale.accel_sensitivity)
    rest_ticks = rest_ms // period
    motion_ticks = motion_ms // period
    press_start = rest_ticks + press_offset_ms // period
    press_stop = press_start + press_ms // period

    rows = []
    for i in range(2 * rest_ticks + motion_ticks + 1):
        moving = rest_ticks <= i < rest_ticks + motion_ticks
        pressed = int(press_start <= i < press_stop)
        rows.append(_row(
            i * period,
            tilted if moving else neutral,
            pedal_l=pressed if pedal == 'L' else 0,
            pedal_r=pressed if pedal == 'R' else 0,
        ))
    return Trace(tuple(rows))


def accessory_toggle_trace(ticks: int = 100, cfg: Optional[ControllerConfig] = None,
                           a_detached: Sequence[TickRange] = ((20, 30),),
                           b_detached: Sequence[TickRange] = ((50, 60),)) -> Trace:
    """Neutral head with accessory A and/or B unplugged over the given row ranges"""
    cfg = cfg or ControllerConfig()
    period = cfg.tick_period_ms
    neutral = tilt_to_counts(0.0, 0.0, cfg.scale.accel_sensitivity)
    return Trace(tuple(
        _row(
            i * period, neutral,
            a_attached=0 if _in_ranges(i, a_detached) else 1,
            b_attached=0 if _in_ranges(i, b_detached) else 1,
        )
        for i in range(ticks)
    ))


class _ScriptedUser:
    """Runs the real controller so the script can look ahead before each tick"""

    def __init__(self, cfg: ControllerConfig, screen: ScreenConfig, axis: str):
        self.cfg = cfg
        self.screen = screen
        self.axis = axis
        self.period = cfg.tick_period_ms
        self.neutral_counts = tilt_to_counts(0.0, 0.0, cfg.scale.accel_sensitivity)
        self.rf = RegisterFile.gy521()
        first = _row(0, self.neutral_counts)
        load_sample(self.rf, first.raw_sample)
        sample = raw_to_physical(decode_burst(emulate_read(self.rf, REG_ACCEL_XOUT_H, BURST_LENGTH)), cfg.scale)
        self.state: ControllerState = init_controller(cfg, self.rf, sample)
        self.rows: List[TraceRow] = [first]
        self.position = screen.center
        self.t = 0

    def _step(self, state: ControllerState, position: Tuple[int, int], row: TraceRow):
        load_sample(self.rf, row.raw_sample)
        state, report, _, _ = tick(state, self.cfg, self.rf, row.pedal_levels, True, row.t_ms)
        x = max(0, min(self.screen.width - 1, position[0] + report.dx))
        y = max(0, min(self.screen.height - 1, position[1] + report.dy))
        return state, (x, y), report

    def _coord(self, position: Tuple[int, int]) -> int:
        return position[0] if self.axis == 'x' else position[1]

    def landing(self, counts: Optional[Tuple[int, int, int]], max_ticks: int = 500) -> int:
        """Where the cursor settles if `counts` is held for one tick and the head then returns to neutral"""
        state, position, t = self.state, self.position, self.t
        first = True
        for _ in range(max_ticks):
            t += self.period
            row = _row(t, counts if first and counts is not None else self.neutral_counts)
            state, position, report = self._step(state, position, row)
            if not first and report.dx == 0 and report.dy == 0:
                break
            first = False
        return self._coord(position)

    def advance(self, counts: Tuple[int, int, int], pedal_l: int = 0):
        self.t += self.period
        row = _row(self.t, counts, pedal_l=pedal_l)
        self.state, self.position, report = self._step(self.state, self.position, row)
        self.rows.append(row)
        return report


def target_acquisition_trace(cfg: Optional[ControllerConfig] = None, distance_px: int = 600, axis: str = 'x',
                             coarse_deg: float = 10.0, fine_deg: Optional[float] = None, tolerance_px: int = 5,
                             screen: Optional[ScreenConfig] = None, max_ms: int = 20_000,
                             click_ms: int = 100) -> Trace:
    """
    Closed-loop reach from screen center to a target `distance_px` away, then a left click

    The scripted user holds a coarse tilt, switches to a fine tilt when one
    more coarse tick would carry the cursor past the target, and returns to
    neutral once the predicted resting point is within tolerance. The click
    is made after the cursor has settled, so faithful mode registers it.
    """
    cfg = cfg or ControllerConfig()
    screen = screen or ScreenConfig()
    if axis not in ('x', 'y'):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if fine_deg is None:
        fine_deg = cfg.mapping.dead_zone + 1.0 / cfg.mapping.gain

    direction = 1 if distance_px >= 0 else -1
    drives_pitch = (axis == 'y') == (cfg.mount.axis_map == AxisMap.PITCH_VERTICAL)
    sign = direction * (cfg.mount.sign_y if axis == 'y' else cfg.mount.sign_x)

    def counts_for(magnitude: float) -> Tuple[int, int, int]:
        angle = sign * magnitude
        pitch, roll = (angle, 0.0) if drives_pitch else (0.0, angle)
        return tilt_to_counts(pitch, roll, cfg.scale.accel_sensitivity)

    coarse, fine = counts_for(coarse_deg), counts_for(fine_deg)
    user = _ScriptedUser(cfg, screen, axis)
    start = user._coord(user.position)
    target = abs(distance_px)

    def progress(coord: int) -> int:
        return (coord - start) * direction

    released = False
    while user.t < max_ms:
        if not released:
            if abs(progress(user.landing(None)) - target) <= tolerance_px:
                released = True
            elif progress(user.landing(coarse)) <= target + tolerance_px:
                user.advance(coarse)
                continue
            elif progress(user.landing(fine)) <= target + tolerance_px:
                user.advance(fine)
                continue
            else:
                released = True
        report = user.advance(user.neutral_counts)
        if report.dx == 0 and report.dy == 0:
            break

    for _ in range(max(1, click_ms // user.period)):
        user.advance(user.neutral_counts, pedal_l=1)
    for _ in range(max(1, click_ms // user.period)):
        user.advance(user.neutral_counts)

    logger.debug("Target acquisition scripted", rows=len(user.rows), final=user.position, distance_px=distance_px)
    return Trace(tuple(user.rows))
