from __future__ import annotations
import dataclasses
from enum import IntEnum, auto

__all__ = [
    'VerdictKind',
    'Verdict'
]

class VerdictKind(IntEnum):
    STABLE_HOME     = auto()
    STABLE_NEIGHBOR = auto()
    UNSTABLE        = auto()

@dataclasses.dataclass(frozen=True)
class Verdict:
    """Outcome of a stability classification.

    `basin` is the 2*pi shift of the equilibrium the state is attracted to: 0 for
    `STABLE_HOME`, non-zero for `STABLE_NEIGHBOR` and unused for `UNSTABLE`.

    >>> str(Verdict.neighbor(-1))
    'StableNeighbor(-1)'
    """

    kind: VerdictKind
    basin: int = 0

    def __post_init__(self):
        if self.kind == VerdictKind.STABLE_NEIGHBOR and self.basin == 0:
            raise ValueError('a neighbouring basin must have a non-zero shift')

        if self.kind != VerdictKind.STABLE_NEIGHBOR and self.basin != 0:
            object.__setattr__(self, 'basin', 0)

    @classmethod
    def home(cls) -> Verdict:
        return cls(VerdictKind.STABLE_HOME)

    @classmethod
    def unstable(cls) -> Verdict:
        return cls(VerdictKind.UNSTABLE)

    @classmethod
    def neighbor(cls, basin: int) -> Verdict:
        return cls(VerdictKind.STABLE_NEIGHBOR, basin)

    @classmethod
    def from_basin(cls, basin: int) -> Verdict:
        return cls.home() if basin == 0 else cls.neighbor(basin)

    @classmethod
    def from_string(cls, value: str) -> Verdict:
        value = value.strip()

        if value == 'StableHome':
            return cls.home()
        elif value == 'Unstable':
            return cls.unstable()
        elif value.startswith('StableNeighbor(') and value.endswith(')'):
            return cls.neighbor(int(value[len('StableNeighbor('):-1]))

        raise ValueError(f"unknown verdict '{value}'")

    @property
    def is_stable(self) -> bool:
        return self.kind != VerdictKind.UNSTABLE

    def shifted(self, m: int) -> Verdict:
        """Verdict for the same state seen from the basin translated by 2*pi*m."""

        if not self.is_stable:
            return self

        return Verdict.from_basin(self.basin + m)

    def __str__(self) -> str:
        if self.kind == VerdictKind.STABLE_HOME:
            return 'StableHome'
        elif self.kind == VerdictKind.STABLE_NEIGHBOR:
            return f'StableNeighbor({self.basin})'
        else:
            return 'Unstable'
