from __future__ import annotations
import dataclasses
import typing
import numpy as np
from enum                  import IntEnum, auto
from tlroa                 import utils
from tlroa.datatypes.state import State

__all__ = [
    'EventKind',
    'Event',
    'Direction',
    'Trajectory'
]

class EventKind(IntEnum):
    FAULT_APPLIED           = auto()
    FAULT_CLEARED           = auto()
    RAMP_STARTED            = auto()
    RAMP_ENDED              = auto()
    TOLERANCE_BAND_ENTERED  = auto()
    DIVERGENCE_DETECTED     = auto()

    @property
    def label(self) -> str:
        """CamelCase name used in exported files (e.g. 'FaultCleared')."""

        return ''.join(part.capitalize() for part in self.name.split('_'))

class Direction(IntEnum):
    FORWARD = auto()
    REVERSE = auto()

@dataclasses.dataclass(frozen=True)
class Event:
    time: float
    kind: EventKind
    basin: int = 0
    """For `TOLERANCE_BAND_ENTERED`: the 2*pi shift of the band that was entered."""

@dataclasses.dataclass(eq=False)
class Trajectory:
    """Time-stamped states produced by one integration.

    `times` always increases. For a reverse-time trajectory it is the backward clock
    `s`, related to scenario time by `t = clock_origin - s`.
    """

    times: np.ndarray
    states: np.ndarray
    events: typing.List[Event] = dataclasses.field(default_factory=list)
    direction: Direction = Direction.FORWARD
    clock_origin: float = 0.0

    def __post_init__(self):
        self.times  = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float).reshape(-1, 2)

        if self.times.ndim != 1 or len(self.times) != len(self.states):
            raise ValueError(f'times and states must have the same length (got {self.times.shape} and {self.states.shape})')

        if len(self.times) == 0:
            raise ValueError('trajectory must have at least one sample')

        if np.any(np.diff(self.times) <= 0):
            raise ValueError('trajectory times must be strictly increasing')

        if not np.all(np.isfinite(self.states)):
            raise ValueError('trajectory states must be finite')

    def __len__(self) -> int:
        return len(self.times)

    @property
    def start(self) -> State:
        return State.from_array(self.states[0])

    @property
    def end(self) -> State:
        return State.from_array(self.states[-1])

    @property
    def deltas(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def omegas(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    def scenario_times(self) -> np.ndarray:
        """Times on the scenario clock."""

        if self.direction == Direction.REVERSE:
            return self.clock_origin - self.times

        return self.times

    def state(self, index: int) -> State:
        return State.from_array(self.states[index])

    def last_event(self, kind: typing.Optional[EventKind] = None) -> typing.Optional[Event]:
        for event in reversed(self.events):
            if kind is None or event.kind == kind:
                return event

        return None

    def has_event(self, kind: EventKind) -> bool:
        return self.last_event(kind) is not None

    def wrapped(self) -> Trajectory:
        """Copy whose angles are wrapped to (-pi, pi]."""

        states       = self.states.copy()
        states[:, 0] = utils.wrap_angle(states[:, 0])

        return dataclasses.replace(self, states=states, events=list(self.events))
