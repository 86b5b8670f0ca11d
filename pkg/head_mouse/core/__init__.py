"""
Core Head Mouse Components

This module contains the firmware-side logic:
- Sensor register-file emulation and burst decoding
- Tilt estimation (accelerometer, EMA smoothing, optional complementary filter)
- Tilt to pointer-delta mapping
- Pedal debounce
- Boot-protocol HID report assembly
- The per-tick controller and diagnostics
"""

from .config import ControllerConfig, HeadMouseSettings, load_config
from .controller import init_controller, tick
from .device_model import RegisterFile
from .hid_report import HidReport
from .input_buttons import PedalState
from .orientation import TiltAngles
from .pointer_mapping import PointerDelta

__all__ = [
    "ControllerConfig",
    "HeadMouseSettings",
    "load_config",
    "RegisterFile",
    "TiltAngles",
    "PointerDelta",
    "PedalState",
    "HidReport",
    "init_controller",
    "tick",
]
