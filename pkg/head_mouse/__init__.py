"""
Head Mouse - tilt-controlled boot-protocol mouse with foot-pedal clicks, plus a deterministic trace-replay simulator
"""

__version__ = "1.0.0"
__author__ = "Head Mouse Team"
__description__ = "Emulated MPU-6050 head mouse: tilt estimation, pointer mapping, pedal debounce, HID reports and replay"

# Only import essential components to avoid circular dependencies
# Other imports should be done explicitly when needed

__all__ = [
    "__version__",
    "__author__",
    "__description__"
]
