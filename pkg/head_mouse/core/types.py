"""
Shared type definitions for the head mouse

Enumerations used across modules, the type aliases for timestamps and raw counts,
and the exception hierarchy.
"""
from __future__ import annotations

from enum import Enum, IntEnum
from typing import NewType, Optional

# Custom type aliases
Milliseconds = NewType('Milliseconds', int)
Counts = NewType('Counts', int)  # signed 16-bit sensor counts
Degrees = NewType('Degrees', float)

INT16_MIN = -32768
INT16_MAX = 32767


class Level(IntEnum):
    """Logic level on a pedal input (pull-down wiring: HIGH means pressed)"""
    LOW = 0
    HIGH = 1


class Pedal(str, Enum):
    """Foot pedals of accessory B"""
    L = "L"
    R = "R"


class EventKind(str, Enum):
    """Debounced button transitions"""
    PRESS = "press"
    RELEASE = "release"


class Mode(str, Enum):
    """Controller behaviour profile"""
    FAITHFUL = "faithful"  # reproduces the prototype, including missed clicks while moving
    IMPROVED = "improved"


class Led(str, Enum):
    """Diagnostic indicator state"""
    OK = "ok"
    MISSING_A = "missing_a"
    MISSING_B = "missing_b"
    FAULT = "fault"


# Exception types
class HeadMouseError(Exception):
    """Base exception for head mouse errors"""
    def __init__(self, message: str, error_code: Optional[str] = None):
        super().__init__(message)
        self.error_code = error_code


class AccessoryAbsentError(HeadMouseError):
    """Accessory A (sensor) is not attached or does not answer the identity probe"""
    pass


class WrongLengthError(HeadMouseError):
    """A byte burst or report has the wrong number of bytes"""
    pass


class FreefallAmbiguousError(HeadMouseError):
    """Accelerometer magnitude too small to observe gravity"""
    pass


class TimeWentBackwardsError(HeadMouseError):
    """A timestamp decreased between successive steps"""
    pass


class NotInitializedError(HeadMouseError):
    """The controller was ticked before init_controller succeeded"""
    pass


class ConfigurationError(HeadMouseError):
    """Configuration file or value errors"""
    pass


class TraceParseError(HeadMouseError):
    """Malformed trace file content"""
    pass


class NonMonotonicTimeError(HeadMouseError):
    """Trace timestamps are not strictly increasing"""
    pass


class TraceRangeError(HeadMouseError):
    """A trace value lies outside its allowed range"""
    pass


class WindowEmptyError(HeadMouseError):
    """A metrics window holds fewer samples than required"""
    pass


class ReplayError(HeadMouseError):
    """A controller error raised while replaying a specific trace row"""
    def __init__(self, message: str, row_index: int, error_code: Optional[str] = None):
        super().__init__(f"row {row_index}: {message}", error_code)
        self.row_index = row_index
