"""
Configuration management for the head mouse using Pydantic v2 patterns
"""
from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .types import ConfigurationError, Mode


class AxisMap(str, Enum):
    """Which relative tilt axis drives the vertical cursor axis"""
    PITCH_VERTICAL = "pitch_vertical"      # pitch -> dy, roll -> dx
    PITCH_HORIZONTAL = "pitch_horizontal"  # pitch -> dx, roll -> dy


class ScaleConfig(BaseModel):
    """Sensor sensitivities at the power-on full scales (+-2 g, +-250 deg/s)"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    accel_sensitivity: float = Field(default=16384.0, gt=0, description="Counts per g")
    gyro_sensitivity: float = Field(default=131.0, gt=0, description="Counts per deg/s")


class MappingConfig(BaseModel):
    """Tilt to pointer-count mapping parameters"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    dead_zone: float = Field(default=2.0, ge=0.0, description="Dead zone around neutral in degrees")
    gain: float = Field(default=3.0, gt=0.0, description="Counts per degree per tick beyond the dead zone")
    max_count: Literal[127] = Field(default=127, description="Largest per-report displacement")


class MountConfig(BaseModel):
    """Sensor mount orientation: right side of the head, pointing downwards"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    axis_map: AxisMap = Field(default=AxisMap.PITCH_VERTICAL)
    sign_x: int = Field(default=1, description="+1 or -1")
    sign_y: int = Field(default=1, description="+1 or -1")

    @field_validator('sign_x', 'sign_y')
    @classmethod
    def validate_sign(cls, v: int) -> int:
        if v not in (-1, 1):
            raise ValueError("sign must be -1 or +1")
        return v


class ScreenConfig(BaseModel):
    """Virtual screen the simulated cursor lives on"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    width: int = Field(default=1920, ge=1)
    height: int = Field(default=1080, ge=1)

    @property
    def center(self) -> tuple[int, int]:
        return self.width // 2, self.height // 2


class ControllerConfig(BaseModel):
    """Everything the firmware loop needs for one run"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    tick_hz: int = Field(default=100, gt=0, description="Controller loop rate")
    mode: Mode = Field(default=Mode.FAITHFUL)
    fusion_enabled: bool = Field(default=False, description="Use the complementary filter")
    alpha: float = Field(default=0.2, gt=0.0, le=1.0, description="EMA smoothing factor (1.0 disables)")
    k: float = Field(default=0.98, ge=0.0, le=1.0, description="Complementary filter gyro weight")
    debounce_ms: int = Field(default=20, gt=0, description="Pedal debounce window")
    scale: ScaleConfig = Field(default_factory=ScaleConfig)
    mapping: MappingConfig = Field(default_factory=MappingConfig)
    mount: MountConfig = Field(default_factory=MountConfig)

    @property
    def tick_period_ms(self) -> int:
        return max(1, round(1000 / self.tick_hz))


class HeadMouseSettings(BaseModel):
    """
    Flat settings as they appear in a `key = value` config file

    Nested models are exposed as properties so callers can hand the
    controller and the simulator exactly what they consume.
    """
    model_config = ConfigDict(
        extra='forbid',  # unknown keys are rejected, not ignored
        validate_assignment=True,
    )

    tick_hz: int = Field(default=100, gt=0)
    mode: Mode = Field(default=Mode.FAITHFUL)
    fusion_enabled: bool = Field(default=False)
    alpha: float = Field(default=0.2, gt=0.0, le=1.0)
    k: float = Field(default=0.98, ge=0.0, le=1.0)
    dead_zone_deg: float = Field(default=2.0, ge=0.0)
    gain: float = Field(default=3.0, gt=0.0)
    sign_x: int = Field(default=1)
    sign_y: int = Field(default=1)
    debounce_ms: int = Field(default=20, gt=0)
    screen_w: int = Field(default=1920, ge=1)
    screen_h: int = Field(default=1080, ge=1)
    accel_sens: float = Field(default=16384.0, gt=0.0)
    gyro_sens: float = Field(default=131.0, gt=0.0)

    @field_validator('sign_x', 'sign_y')
    @classmethod
    def validate_sign(cls, v: int) -> int:
        if v not in (-1, 1):
            raise ValueError("sign must be -1 or +1")
        return v

    @property
    def controller(self) -> ControllerConfig:
        """Get controller configuration from the flat fields"""
        return ControllerConfig(
            tick_hz=self.tick_hz,
            mode=self.mode,
            fusion_enabled=self.fusion_enabled,
            alpha=self.alpha,
            k=self.k,
            debounce_ms=self.debounce_ms,
            scale=ScaleConfig(accel_sensitivity=self.accel_sens, gyro_sensitivity=self.gyro_sens),
            mapping=MappingConfig(dead_zone=self.dead_zone_deg, gain=self.gain),
            mount=MountConfig(sign_x=self.sign_x, sign_y=self.sign_y),
        )

    @property
    def screen(self) -> ScreenConfig:
        """Get screen configuration from the flat fields"""
        return ScreenConfig(width=self.screen_w, height=self.screen_h)


def parse_config_text(text: str) -> Dict[str, str]:
    """
    Parse line-oriented `key = value` text

    `#` starts a comment; blank lines are skipped.

    Raises:
        ConfigurationError: On a line without `=`, an empty key, or a repeated key
    """
    values: Dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {raw_line.strip()!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        if not key:
            raise ConfigurationError(f"line {lineno}: empty key")
        if key in values:
            raise ConfigurationError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def build_settings(values: Mapping[str, Any]) -> HeadMouseSettings:
    """
    Validate raw key/value pairs into settings

    Raises:
        ConfigurationError: If any key is unknown or any value violates its constraints
    """
    try:
        return HeadMouseSettings(**dict(values))
    except ValidationError as e:
        # Format validation errors nicely
        error_details = []
        for error in e.errors():
            field = " -> ".join(str(x) for x in error['loc'])
            error_details.append(f"{field}: {error['msg']}")

        raise ConfigurationError("Configuration validation failed:\n" + "\n".join(error_details)) from e


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> HeadMouseSettings:
    """
    Load settings from an optional config file plus explicit overrides

    Args:
        path: Config file path, or None for defaults
        overrides: Values that win over the file (e.g. the CLI --mode flag)

    Returns:
        Validated HeadMouseSettings instance

    Raises:
        OSError: If the file cannot be read
        ConfigurationError: If parsing or validation fails
    """
    values: Dict[str, Any] = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text(encoding='utf-8')))
    if overrides:
        values.update({key: value for key, value in overrides.items() if value is not None})
    return build_settings(values)
