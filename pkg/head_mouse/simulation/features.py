"""
Qualitative feature matrix against a conventional USB mouse

Faithful mode answers exactly as the prototype was evaluated. Improved mode
differs in one row: pedals are sampled while the head moves, so presses during
motion are detected (see the press-during-motion replay scenario).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from ..core.config import ControllerConfig
from ..core.types import Mode

PRESS_WHILE_MOVING = "Detects button press when moving"

PROTOTYPE_COLUMN: Tuple[Tuple[str, str], ...] = (
    ("Wired USB type A connectivity", "Yes"),
    ("Full cursor control", "Yes"),
    ("Static cursor stability", "No"),
    ("Correct cursor movement (non-erratic)", "Yes"),
    ("Scroll Wheel", "No"),
    ("Compatible with PC and Laptop", "Yes"),
    ("Right and left-click buttons", "Yes"),
    ("Compatible with Windows 10", "Yes"),
    (PRESS_WHILE_MOVING, "No"),
    ("Normal delay when detecting button press", "Yes"),
    ("Number of buttons", "2"),
)


@dataclass(frozen=True)
class FeatureRow:
    characteristic: str
    answer: str

    def render(self) -> str:
        return f"{self.characteristic}: {self.answer}"


@dataclass(frozen=True)
class FeatureReport:
    mode: Mode
    rows: Tuple[FeatureRow, ...]

    def answer(self, characteristic: str) -> str:
        for row in self.rows:
            if row.characteristic == characteristic:
                return row.answer
        raise KeyError(characteristic)

    def lines(self) -> List[str]:
        return [row.render() for row in self.rows]


def feature_matrix(cfg: ControllerConfig) -> FeatureReport:
    rows = []
    for characteristic, answer in PROTOTYPE_COLUMN:
        if characteristic == PRESS_WHILE_MOVING and cfg.mode == Mode.IMPROVED:
            answer = "Yes"
        rows.append(FeatureRow(characteristic, answer))
    return FeatureReport(mode=cfg.mode, rows=tuple(rows))
