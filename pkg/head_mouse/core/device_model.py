"""
GY-521 / MPU-6050 emulation

The sensor is modelled as an 8-bit register file. The firmware reads the
contiguous ACCEL/TEMP/GYRO block (0x3B..0x48) as one 14-byte burst, which is
decoded into signed 16-bit counts and then scaled to physical units.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Dict, Tuple

import structlog

from .config import ScaleConfig
from .types import INT16_MAX, INT16_MIN, AccessoryAbsentError, WrongLengthError

logger = structlog.get_logger(__name__)

# Register map (subset)
REG_ACCEL_XOUT_H = 0x3B
REG_TEMP_OUT_H = 0x41
REG_GYRO_XOUT_H = 0x43
REG_PWR_MGMT_1 = 0x6B
REG_WHO_AM_I = 0x75

WHO_AM_I_VALUE = 0x68
BURST_LENGTH = 14

_BURST_FORMAT = ">7h"  # ax, ay, az, temp, gx, gy, gz


@dataclass
class RegisterFile:
    """Register contents of the emulated sensor plus its attachment state"""
    registers: Dict[int, int] = field(default_factory=dict)
    present: bool = True
    awake: bool = False

    @classmethod
    def gy521(cls, present: bool = True) -> "RegisterFile":
        """A genuine board: identity register answers 0x68, device asleep at power-on"""
        return cls(registers={REG_WHO_AM_I: WHO_AM_I_VALUE}, present=present)

    def read_register(self, address: int) -> int:
        return self.registers.get(address & 0xFF, 0x00)

    def write_register(self, address: int, value: int) -> None:
        if not 0 <= value <= 0xFF:
            raise ValueError(f"register value out of range: {value}")
        self.registers[address & 0xFF] = value


@dataclass(frozen=True)
class RawImuSample:
    """One burst decoded to signed 16-bit counts"""
    ax: int
    ay: int
    az: int
    temp: int
    gx: int
    gy: int
    gz: int

    def __post_init__(self) -> None:
        for name in ('ax', 'ay', 'az', 'temp', 'gx', 'gy', 'gz'):
            value = getattr(self, name)
            if not INT16_MIN <= value <= INT16_MAX:
                raise ValueError(f"{name} out of signed 16-bit range: {value}")

    def as_tuple(self) -> Tuple[int, ...]:
        return (self.ax, self.ay, self.az, self.temp, self.gx, self.gy, self.gz)


@dataclass(frozen=True)
class PhysicalSample:
    """Accelerometer in g, gyro in deg/s"""
    accel: Tuple[float, float, float]
    gyro: Tuple[float, float, float] = (0.0, 0.0, 0.0)


def emulate_read(rf: RegisterFile, start: int, count: int) -> bytes:
    """
    Burst-read `count` registers starting at `start`, as the firmware does over I2C

    Addresses auto-increment and wrap at 0xFF. The register file is not modified.

    Raises:
        AccessoryAbsentError: If the sensor is not attached
        ValueError: If count < 1
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not rf.present:
        raise AccessoryAbsentError("accessory A (GY-521) is not attached", error_code="missing_a")
    return bytes(rf.read_register(start + offset) for offset in range(count))


def decode_burst(data: bytes) -> RawImuSample:
    """
    Decode the 14-byte ACCEL/TEMP/GYRO block into counts

    Raises:
        WrongLengthError: If data is not exactly 14 bytes
    """
    if len(data) != BURST_LENGTH:
        raise WrongLengthError(f"expected {BURST_LENGTH} bytes, got {len(data)}")
    return RawImuSample(*struct.unpack(_BURST_FORMAT, bytes(data)))


def encode_burst(sample: RawImuSample) -> bytes:
    """Inverse of decode_burst"""
    return struct.pack(_BURST_FORMAT, *sample.as_tuple())


def raw_to_physical(s: RawImuSample, cfg: ScaleConfig) -> PhysicalSample:
    """Scale counts by the configured sensitivities"""
    a = cfg.accel_sensitivity
    g = cfg.gyro_sensitivity
    return PhysicalSample(
        accel=(s.ax / a, s.ay / a, s.az / a),
        gyro=(s.gx / g, s.gy / g, s.gz / g),
    )


def temperature_celsius(temp_raw: int) -> float:
    """Die temperature from the TEMP_OUT counts (datasheet transfer function)"""
    return temp_raw / 340.0 + 36.53


def probe_identity(rf: RegisterFile) -> bool:
    """True iff the sensor is attached and WHO_AM_I answers 0x68"""
    if not rf.present:
        return False
    return rf.read_register(REG_WHO_AM_I) == WHO_AM_I_VALUE


def wake(rf: RegisterFile) -> None:
    """Clear PWR_MGMT_1 (sleep bit) and mark the device awake"""
    rf.write_register(REG_PWR_MGMT_1, 0x00)
    rf.awake = True
    logger.debug("Sensor woken", register=hex(REG_PWR_MGMT_1))


def load_sample(rf: RegisterFile, sample: RawImuSample) -> None:
    """Place a sample into the data registers so the next burst read returns it"""
    for offset, value in enumerate(encode_burst(sample)):
        rf.registers[REG_ACCEL_XOUT_H + offset] = value
