from __future__ import annotations
import dataclasses
import typing
from tlroa.datatypes.state   import State
from tlroa.datatypes.verdict import Verdict

__all__ = [
    'AssessmentResult',
    'SweepPoint',
    'ClearingWindow',
    'ClearingSweep'
]

@dataclasses.dataclass(frozen=True)
class AssessmentResult:
    clearing_time: float
    post_fault_state: State
    """Raw (unwrapped) state at the clearing instant."""

    wrapped_state: State
    verdict: Verdict
    shifts_tested: typing.Tuple[int, ...] = ()
    scenario_hash: str = ''
    simulated: typing.Optional[Verdict] = None
    """Verdict of a forward run of the post-fault dynamics, if one was made."""

    note: str = ''

    @property
    def is_violation(self) -> bool:
        return self.simulated is not None and self.verdict.is_stable and not self.simulated.is_stable

@dataclasses.dataclass(frozen=True)
class SweepPoint:
    clearing_time: float
    post_fault_state: typing.Optional[State]
    """`None` if the fault run failed (see `note`)."""

    verdict: Verdict
    """Verdict from boundary membership."""

    simulated: Verdict
    """Verdict from a forward simulation of the post-fault dynamics."""

    note: str = ''

    @property
    def agrees(self) -> bool:
        return self.verdict == self.simulated

    @property
    def is_violation(self) -> bool:
        """Membership claims stability that the simulation does not confirm."""

        return self.verdict.is_stable and not self.simulated.is_stable

    @property
    def is_conservative(self) -> bool:
        """Membership says unstable but the simulation settles (unstable within horizon)."""

        return not self.verdict.is_stable and self.simulated.is_stable

@dataclasses.dataclass(frozen=True)
class ClearingWindow:
    t_first: float
    t_last: float
    verdict: Verdict

    def __str__(self) -> str:
        return f'[{self.t_first:.4g}, {self.t_last:.4g}] s: {self.verdict}'

@dataclasses.dataclass(eq=False)
class ClearingSweep:
    points: typing.List[SweepPoint]
    windows: typing.List[ClearingWindow]
    simulation_count: int = 0
    wall_time: typing.Optional[float] = None
    scenario_hash: str = ''

    @property
    def violations(self) -> typing.List[SweepPoint]:
        return [p for p in self.points if p.is_violation]

    @property
    def mismatches(self) -> typing.List[SweepPoint]:
        return [p for p in self.points if not p.agrees]

    def transitions(self) -> typing.List[float]:
        """Clearing times where stability flips, midway between the bracketing points."""

        times = []

        for left, right in zip(self.points, self.points[1:]):
            if left.verdict.is_stable != right.verdict.is_stable:
                times.append((left.clearing_time + right.clearing_time) / 2)

        return times
