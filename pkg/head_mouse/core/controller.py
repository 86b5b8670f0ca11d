"""
Firmware main loop

One call to `tick` is one pass of the fixed-rate loop: check the accessories and
update the diagnostic LED, read and decode the sensor burst, estimate and smooth
the head tilt, map it to a pointer delta, debounce the pedals and emit exactly
one boot-mouse report. Everything is a value; the caller threads the state.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, NamedTuple, Optional

import structlog

from .config import ControllerConfig
from .device_model import (
    BURST_LENGTH,
    REG_ACCEL_XOUT_H,
    PhysicalSample,
    RegisterFile,
    decode_burst,
    emulate_read,
    probe_identity,
    raw_to_physical,
    wake,
)
from .hid_report import HidReport, make_report
from .input_buttons import (
    ButtonEvent,
    DebounceState,
    PedalLevels,
    PedalState,
    debounce_step,
    edge_events,
    hold_debounce,
    new_debounce_state,
)
from .orientation import (
    FusionState,
    SmootherState,
    TiltAngles,
    complementary_update,
    smooth_ema,
    tilt_from_accel,
)
from .pointer_mapping import NeutralPose, map_tilt_to_delta, set_neutral
from .types import (
    AccessoryAbsentError,
    FreefallAmbiguousError,
    Led,
    Mode,
    NotInitializedError,
    TimeWentBackwardsError,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class DiagnosticState:
    led: Led

    @property
    def ok(self) -> bool:
        return self.led == Led.OK


@dataclass(frozen=True)
class ControllerState:
    neutral: NeutralPose
    smoother: SmootherState
    fusion: FusionState
    debounce: DebounceState
    pedals: PedalState
    last_tilt: TiltAngles
    initialized: bool = False
    last_t: Optional[int] = None


class TickOutcome(NamedTuple):
    state: ControllerState
    report: Optional[HidReport]
    diagnostics: DiagnosticState
    events: List[ButtonEvent]


def diagnostics_update(a_ok: bool, b_attached: bool, sensor_awake: bool = True) -> DiagnosticState:
    """LED state; a missing sensor outranks missing pedals"""
    if not a_ok:
        return DiagnosticState(Led.MISSING_A)
    if not b_attached:
        return DiagnosticState(Led.MISSING_B)
    if not sensor_awake:
        return DiagnosticState(Led.FAULT)
    return DiagnosticState(Led.OK)


def init_controller(cfg: ControllerConfig, rf: RegisterFile, first_sample: PhysicalSample) -> ControllerState:
    """
    Setup phase: probe and wake the sensor, capture the neutral pose

    Raises:
        AccessoryAbsentError: If the identity probe fails
        FreefallAmbiguousError: If the first sample cannot give a tilt
    """
    if not probe_identity(rf):
        raise AccessoryAbsentError("sensor identity probe failed during init", error_code="missing_a")
    wake(rf)
    tilt = tilt_from_accel(first_sample)
    logger.info("Controller initialized", pitch0=round(tilt.pitch, 3), roll0=round(tilt.roll, 3), mode=cfg.mode.value)
    return ControllerState(
        neutral=set_neutral(tilt),
        smoother=SmootherState(current=tilt, alpha=cfg.alpha),
        fusion=FusionState(angles=tilt, k=cfg.k),
        debounce=new_debounce_state(cfg.debounce_ms),
        pedals=PedalState(),
        last_tilt=tilt,
        initialized=True,
    )


def recalibrate(st: ControllerState, tilt: TiltAngles) -> ControllerState:
    """Replace the neutral pose (explicit re-calibration)"""
    return replace(st, neutral=set_neutral(tilt))


def _estimate_tilt(st: ControllerState, cfg: ControllerConfig, sample: PhysicalSample, t: int) -> ControllerState:
    fusion = st.fusion
    try:
        if cfg.fusion_enabled:
            if st.last_t is not None and t > st.last_t:
                dt = (t - st.last_t) / 1000.0
            else:
                dt = 1.0 / cfg.tick_hz
            fusion = complementary_update(st.fusion, sample, dt)
            tilt = fusion.angles
        else:
            tilt = tilt_from_accel(sample)
    except FreefallAmbiguousError:
        logger.debug("Freefall sample, holding last tilt", t=t)
        tilt = st.last_tilt
    return replace(st, fusion=fusion, smoother=smooth_ema(st.smoother, tilt), last_tilt=tilt)


def tick(
    st: ControllerState,
    cfg: ControllerConfig,
    rf: RegisterFile,
    pedals: PedalLevels,
    b_attached: bool,
    t: int,
) -> TickOutcome:
    """
    One loop iteration at time t (ms)

    Raises:
        NotInitializedError: If init_controller has not succeeded
        TimeWentBackwardsError: If t precedes the previous tick
    """
    if not st.initialized:
        raise NotInitializedError("tick called before init_controller")
    if st.last_t is not None and t < st.last_t:
        raise TimeWentBackwardsError(f"tick time went backwards: {t} < {st.last_t}")

    diag = diagnostics_update(probe_identity(rf), b_attached, rf.awake)
    if not diag.ok:
        return TickOutcome(st, None, diag, [])

    raw = decode_burst(emulate_read(rf, REG_ACCEL_XOUT_H, BURST_LENGTH))
    st = _estimate_tilt(st, cfg, raw_to_physical(raw, cfg.scale), t)
    delta = map_tilt_to_delta(st.smoother.current, st.neutral, cfg.mount, cfg.mapping)

    events: List[ButtonEvent] = []
    if cfg.mode == Mode.FAITHFUL and not delta.is_zero:
        # pedal inputs are not sampled while the cursor is moving
        pedal_state = st.pedals
        st = replace(st, debounce=hold_debounce(st.debounce, t))
    else:
        debounce, pedal_state = debounce_step(st.debounce, pedals, t)
        events = edge_events(st.pedals, pedal_state, t)
        st = replace(st, debounce=debounce, pedals=pedal_state)

    st = replace(st, last_t=t)
    return TickOutcome(st, make_report(pedal_state, delta), diag, events)
