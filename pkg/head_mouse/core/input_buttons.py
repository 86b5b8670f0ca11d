"""
Foot pedals (accessory B): pull-down inputs with a time-based debounce

Each pedal keeps a stable (debounced) state and the level currently
disagreeing with it. The stable state flips only once that disagreement has
lasted a full window.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from .types import EventKind, Level, Pedal, TimeWentBackwardsError

DEFAULT_WINDOW_MS = 20


@dataclass(frozen=True)
class PedalLevels:
    """Raw input levels; HIGH means pressed (pull-down wiring)"""
    l_level: Level = Level.LOW
    r_level: Level = Level.LOW


@dataclass(frozen=True)
class PedalState:
    l_pressed: bool = False
    r_pressed: bool = False


@dataclass(frozen=True)
class ButtonEvent:
    pedal: Pedal
    kind: EventKind
    t: int


@dataclass(frozen=True)
class PedalDebounce:
    stable: bool = False
    candidate: Level = Level.LOW
    candidate_since: int = 0


@dataclass(frozen=True)
class DebounceState:
    left: PedalDebounce = field(default_factory=PedalDebounce)
    right: PedalDebounce = field(default_factory=PedalDebounce)
    window: int = DEFAULT_WINDOW_MS
    last_t: Optional[int] = None

    def __post_init__(self) -> None:
        if self.window <= 0:
            raise ValueError(f"debounce window must be > 0 ms, got {self.window}")

    @property
    def pedals(self) -> PedalState:
        return PedalState(l_pressed=self.left.stable, r_pressed=self.right.stable)


def new_debounce_state(window_ms: int = DEFAULT_WINDOW_MS) -> DebounceState:
    """Both pedals released"""
    return DebounceState(window=window_ms)


def _step_pedal(pd: PedalDebounce, level: Level, t: int, window: int) -> PedalDebounce:
    pressed = level == Level.HIGH
    if pressed == pd.stable:
        # agreement cancels any pending change
        return replace(pd, candidate=level, candidate_since=t)

    stable_level = Level.HIGH if pd.stable else Level.LOW
    if pd.candidate == stable_level:
        pd = replace(pd, candidate=level, candidate_since=t)

    if t - pd.candidate_since >= window:
        return PedalDebounce(stable=pressed, candidate=level, candidate_since=t)
    return pd


def debounce_step(st: DebounceState, raw: PedalLevels, t: int) -> Tuple[DebounceState, PedalState]:
    """
    Advance both pedal debouncers to time t

    Raises:
        TimeWentBackwardsError: If t is earlier than the previous step
    """
    if st.last_t is not None and t < st.last_t:
        raise TimeWentBackwardsError(f"debounce time went backwards: {t} < {st.last_t}")

    new_state = DebounceState(
        left=_step_pedal(st.left, raw.l_level, t, st.window),
        right=_step_pedal(st.right, raw.r_level, t, st.window),
        window=st.window,
        last_t=t,
    )
    return new_state, new_state.pedals


def hold_debounce(st: DebounceState, t: int) -> DebounceState:
    """
    Account for a tick at t on which the inputs were not read

    Pending disagreements are dropped, so a change must be observed for a
    full window after sampling resumes.

    Raises:
        TimeWentBackwardsError: If t is earlier than the previous step
    """
    if st.last_t is not None and t < st.last_t:
        raise TimeWentBackwardsError(f"debounce time went backwards: {t} < {st.last_t}")

    def rearm(pd: PedalDebounce) -> PedalDebounce:
        return PedalDebounce(stable=pd.stable, candidate=Level.HIGH if pd.stable else Level.LOW, candidate_since=t)

    return replace(st, left=rearm(st.left), right=rearm(st.right), last_t=t)


def edge_events(prev: PedalState, next: PedalState, t: int) -> List[ButtonEvent]:
    """Press/Release events for pedals whose stable state changed, L before R"""
    events: List[ButtonEvent] = []
    for pedal, before, after in (
        (Pedal.L, prev.l_pressed, next.l_pressed),
        (Pedal.R, prev.r_pressed, next.r_pressed),
    ):
        if before != after:
            events.append(ButtonEvent(pedal=pedal, kind=EventKind.PRESS if after else EventKind.RELEASE, t=t))
    return events
