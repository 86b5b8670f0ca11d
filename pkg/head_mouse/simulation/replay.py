"""
Deterministic replay engine

Feeds a trace through the controller one row per tick, collects the exact
report stream, button events and LED log, and integrates a virtual cursor
(one count = one pixel, no host pointer acceleration).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from ..core.config import ControllerConfig, ScreenConfig
from ..core.controller import DiagnosticState, init_controller, tick
from ..core.device_model import (
    BURST_LENGTH,
    REG_ACCEL_XOUT_H,
    RegisterFile,
    decode_burst,
    emulate_read,
    load_sample,
    raw_to_physical,
)
from ..core.hid_report import deserialize_report, format_report_line, serialize_report
from ..core.input_buttons import ButtonEvent
from ..core.types import HeadMouseError, ReplayError, WindowEmptyError
from ..infrastructure.monitoring import ReplayMetrics
from .trace import Trace

logger = structlog.get_logger(__name__)

ReportRecord = Tuple[int, bytes]


@dataclass(frozen=True)
class CursorPath:
    """Cursor positions (t_ms, x, y) in pixels, always on screen"""
    positions: Tuple[Tuple[int, int, int], ...]
    screen: ScreenConfig = field(default_factory=ScreenConfig)

    @property
    def final(self) -> Tuple[int, int]:
        _, x, y = self.positions[-1]
        return x, y


@dataclass(frozen=True)
class JitterStats:
    rms_px: float
    peak_px: float


@dataclass
class ReplayOutput:
    reports: List[ReportRecord]
    events: List[ButtonEvent]
    path: CursorPath
    diag_log: List[Tuple[int, DiagnosticState]]
    metrics: ReplayMetrics = field(compare=False, repr=False, default_factory=ReplayMetrics)

    def report_stream_lines(self) -> List[str]:
        return [format_report_line(t_ms, data) for t_ms, data in self.reports]

    def led_changes(self) -> List[Tuple[int, DiagnosticState]]:
        """Diagnostic log entries where the LED differs from the previous tick"""
        changes: List[Tuple[int, DiagnosticState]] = []
        for t_ms, diag in self.diag_log:
            if not changes or changes[-1][1] != diag:
                changes.append((t_ms, diag))
        return changes


def _clamp(value: int, low: int, high: int) -> int:
    return max(low, min(high, value))


def integrate_cursor(
    reports: Iterable[ReportRecord],
    start: Tuple[int, int],
    screen: ScreenConfig,
    start_t: int = 0,
) -> CursorPath:
    """
    Accumulate report displacements from `start`, clamping to the screen after each step

    Raises:
        ValueError: If start is off screen
    """
    x, y = start
    if not (0 <= x < screen.width and 0 <= y < screen.height):
        raise ValueError(f"start {start} outside {screen.width}x{screen.height} screen")

    positions = [(start_t, x, y)]
    for t_ms, data in reports:
        report = deserialize_report(data)
        x = _clamp(x + report.dx, 0, screen.width - 1)
        y = _clamp(y + report.dy, 0, screen.height - 1)
        positions.append((t_ms, x, y))
    return CursorPath(positions=tuple(positions), screen=screen)


def static_jitter(path: CursorPath, window: Tuple[int, int]) -> JitterStats:
    """
    RMS and peak Euclidean displacement from the mean position inside [t_from, t_to]

    Raises:
        WindowEmptyError: If fewer than two samples fall in the window
    """
    t_from, t_to = window
    points = np.array([(x, y) for t_ms, x, y in path.positions if t_from <= t_ms <= t_to], dtype=float)
    if len(points) < 2:
        raise WindowEmptyError(f"window [{t_from}, {t_to}] holds {len(points)} samples, need at least 2")

    distances = np.linalg.norm(points - points.mean(axis=0), axis=1)
    return JitterStats(
        rms_px=float(np.sqrt(np.mean(distances ** 2))),
        peak_px=float(distances.max()),
    )


def run_replay(tr: Trace, cfg: ControllerConfig, screen: Optional[ScreenConfig] = None) -> ReplayOutput:
    """
    Initialize the controller from row 0, then tick once per remaining row

    Raises:
        ValueError: If the trace is empty
        ReplayError: Wrapping any controller error, with the offending row index
    """
    if len(tr) == 0:
        raise ValueError("cannot replay an empty trace")
    screen = screen or ScreenConfig()
    metrics = ReplayMetrics()

    first = tr[0]
    rf = RegisterFile.gy521(present=bool(first.a_attached))
    load_sample(rf, first.raw_sample)
    try:
        sample = raw_to_physical(decode_burst(emulate_read(rf, REG_ACCEL_XOUT_H, BURST_LENGTH)), cfg.scale)
        state = init_controller(cfg, rf, sample)
    except HeadMouseError as e:
        raise ReplayError(str(e), row_index=0, error_code=e.error_code) from e

    logger.info("Replay started", rows=len(tr), mode=cfg.mode.value, fusion=cfg.fusion_enabled)

    reports: List[ReportRecord] = []
    events: List[ButtonEvent] = []
    diag_log: List[Tuple[int, DiagnosticState]] = []

    for index in range(1, len(tr)):
        row = tr[index]
        rf.present = bool(row.a_attached)
        load_sample(rf, row.raw_sample)
        try:
            state, report, diag, new_events = tick(state, cfg, rf, row.pedal_levels, bool(row.b_attached), row.t_ms)
        except HeadMouseError as e:
            raise ReplayError(str(e), row_index=index, error_code=e.error_code) from e

        if diag_log and diag_log[-1][1] != diag:
            logger.debug("LED changed", t_ms=row.t_ms, led=diag.led.value)
        diag_log.append((row.t_ms, diag))

        if report is None:
            metrics.record_unhealthy_tick(diag.led.value)
        else:
            reports.append((row.t_ms, serialize_report(report)))
            metrics.record_report()
        for event in new_events:
            metrics.record_event(event.pedal.value, event.kind.value)
        events.extend(new_events)

    path = integrate_cursor(reports, screen.center, screen, start_t=first.t_ms)
    metrics.set_cursor(*path.final)
    logger.info("Replay finished", reports=len(reports), events=len(events), final=path.final)
    return ReplayOutput(reports=reports, events=events, path=path, diag_log=diag_log, metrics=metrics)


def write_report_stream(out: Union[str, Path], reports: Sequence[ReportRecord]) -> None:
    """One `<t_ms> <b0> <b1> <b2>` line per report"""
    lines = [format_report_line(t_ms, data) for t_ms, data in reports]
    Path(out).write_text("".join(line + "\n" for line in lines), encoding='utf-8', newline='\n')


def write_path(out: Union[str, Path], path: CursorPath) -> None:
    """One `<t_ms> <x> <y>` line per cursor position"""
    lines = [f"{t_ms} {x} {y}" for t_ms, x, y in path.positions]
    Path(out).write_text("".join(line + "\n" for line in lines), encoding='utf-8', newline='\n')
