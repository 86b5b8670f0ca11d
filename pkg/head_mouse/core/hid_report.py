"""
Boot-protocol mouse reports: buttons, X, Y

Hosts drive this device class without vendor drivers. No wheel byte: the
prototype has no scroll function.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Tuple

from .input_buttons import PedalState
from .pointer_mapping import MAX_COUNT, PointerDelta
from .types import WrongLengthError

BUTTON_LEFT = 0x01
BUTTON_RIGHT = 0x02
RESERVED_BITS = 0xFC
REPORT_LENGTH = 3

_REPORT_FORMAT = "<Bbb"


@dataclass(frozen=True)
class HidReport:
    buttons: int = 0
    dx: int = 0
    dy: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.buttons <= 0xFF or self.buttons & RESERVED_BITS:
            raise ValueError(f"invalid button bits: {self.buttons:#04x}")
        if not (-MAX_COUNT <= self.dx <= MAX_COUNT and -MAX_COUNT <= self.dy <= MAX_COUNT):
            raise ValueError(f"displacement out of range: ({self.dx}, {self.dy})")

    @property
    def left(self) -> bool:
        return bool(self.buttons & BUTTON_LEFT)

    @property
    def right(self) -> bool:
        return bool(self.buttons & BUTTON_RIGHT)


def make_report(p: PedalState, d: PointerDelta) -> HidReport:
    buttons = (BUTTON_LEFT if p.l_pressed else 0) | (BUTTON_RIGHT if p.r_pressed else 0)
    return HidReport(buttons=buttons, dx=d.dx, dy=d.dy)


def serialize_report(r: HidReport) -> bytes:
    """Exact bytes the host receives"""
    return struct.pack(_REPORT_FORMAT, r.buttons, r.dx, r.dy)


def deserialize_report(data: bytes) -> HidReport:
    """
    Parse a 3-byte report

    Raises:
        WrongLengthError: If data is not 3 bytes
        ValueError: If reserved bits are set or a displacement is -128
    """
    if len(data) != REPORT_LENGTH:
        raise WrongLengthError(f"expected {REPORT_LENGTH} bytes, got {len(data)}")
    buttons, dx, dy = struct.unpack(_REPORT_FORMAT, bytes(data))
    return HidReport(buttons=buttons, dx=dx, dy=dy)


def format_report_line(t_ms: int, data: bytes) -> str:
    """`<t_ms> <b0> <b1> <b2>` with two-digit lowercase hex bytes"""
    return " ".join([str(t_ms), *(f"{b:02x}" for b in data)])


def parse_report_line(line: str) -> Tuple[int, bytes]:
    """Inverse of format_report_line"""
    parts = line.split()
    if len(parts) != 1 + REPORT_LENGTH:
        raise WrongLengthError(f"expected timestamp and {REPORT_LENGTH} bytes, got {line!r}")
    return int(parts[0]), bytes(int(part, 16) for part in parts[1:])
