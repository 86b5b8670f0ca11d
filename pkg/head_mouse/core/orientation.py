"""
Head tilt estimation from the accelerometer, with EMA smoothing and an
optional complementary filter that also uses the gyro rates
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .device_model import PhysicalSample
from .types import FreefallAmbiguousError

FREEFALL_THRESHOLD_G = 0.05


def wrap_degrees(angle: float) -> float:
    """Map an angle into (-180, 180]"""
    wrapped = angle - 360.0 * math.floor((angle + 180.0) / 360.0)
    if wrapped <= -180.0:
        wrapped += 360.0
    return wrapped


@dataclass(frozen=True)
class TiltAngles:
    """Pitch in [-90, 90] and roll in (-180, 180], degrees"""
    pitch: float
    roll: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.pitch <= 90.0:
            raise ValueError(f"pitch out of range: {self.pitch}")
        if not -180.0 < self.roll <= 180.0:
            raise ValueError(f"roll out of range: {self.roll}")


@dataclass(frozen=True)
class SmootherState:
    current: TiltAngles
    alpha: float = 0.2

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")


@dataclass(frozen=True)
class FusionState:
    angles: TiltAngles
    k: float = 0.98

    def __post_init__(self) -> None:
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"k must be in [0, 1], got {self.k}")


def _normalize(pitch: float, roll: float) -> TiltAngles:
    # +0.0 folds a negative zero
    return TiltAngles(pitch=min(90.0, max(-90.0, pitch)) + 0.0, roll=wrap_degrees(roll) + 0.0)


def tilt_from_accel(p: PhysicalSample) -> TiltAngles:
    """
    Pitch and roll from the gravity direction

    Raises:
        FreefallAmbiguousError: If |accel| <= 0.05 g
    """
    ax, ay, az = p.accel
    magnitude = math.sqrt(ax * ax + ay * ay + az * az)
    if magnitude <= FREEFALL_THRESHOLD_G:
        raise FreefallAmbiguousError(f"accel magnitude {magnitude:.4f} g too small to observe gravity")
    pitch = math.degrees(math.atan2(-ax, math.hypot(ay, az)))
    roll = math.degrees(math.atan2(ay, az))
    return _normalize(pitch, roll)


def smooth_ema(st: SmootherState, new: TiltAngles) -> SmootherState:
    """Wrap-aware exponential moving average toward `new`"""
    if st.alpha == 1.0:
        return SmootherState(current=new, alpha=st.alpha)
    cur = st.current
    pitch = cur.pitch + st.alpha * wrap_degrees(new.pitch - cur.pitch)
    roll = cur.roll + st.alpha * wrap_degrees(new.roll - cur.roll)
    return SmootherState(current=_normalize(pitch, roll), alpha=st.alpha)


def complementary_update(fs: FusionState, p: PhysicalSample, dt: float) -> FusionState:
    """
    Blend integrated gyro rates with the accelerometer tilt

    The gyro y rate drives pitch and the x rate drives roll.

    Raises:
        ValueError: If dt <= 0
        FreefallAmbiguousError: From tilt_from_accel when k < 1
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if fs.k == 0.0:
        return FusionState(angles=tilt_from_accel(p), k=fs.k)

    gx, gy, _ = p.gyro
    pitch_gyro = fs.angles.pitch + gy * dt
    roll_gyro = fs.angles.roll + gx * dt
    if fs.k == 1.0:
        return FusionState(angles=_normalize(pitch_gyro, roll_gyro), k=fs.k)

    acc = tilt_from_accel(p)
    w = 1.0 - fs.k
    pitch = pitch_gyro + w * (acc.pitch - pitch_gyro)
    roll = roll_gyro + w * wrap_degrees(acc.roll - roll_gyro)
    return FusionState(angles=_normalize(pitch, roll), k=fs.k)
