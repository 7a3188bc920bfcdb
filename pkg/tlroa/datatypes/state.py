from __future__ import annotations
import dataclasses
import math
import typing
import numpy as np

__all__ = [
    'State',
    'SwingCoefficients'
]

@dataclasses.dataclass(frozen=True)
class State:
    """A point of the (delta, delta_dot) phase plane."""

    x1: float
    """PLL angle delta, in rad."""

    x2: float
    """PLL angle derivative, in rad/s (deviation from the reference frame)."""

    def __post_init__(self):
        if not (math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise ValueError(f'state must be finite (got x1={self.x1}, x2={self.x2})')

    @classmethod
    def from_array(cls, values: typing.Sequence[float]) -> State:
        return cls(float(values[0]), float(values[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2], dtype=float)

    @property
    def delta(self) -> float:
        return self.x1

    @property
    def omega(self) -> float:
        return self.x2

    def shifted(self, k: int) -> State:
        """The same state in the basin translated by 2*pi*k."""

        return State(self.x1 + 2 * math.pi * k, self.x2)

    def distance(self, other: State) -> float:
        return math.hypot(self.x1 - other.x1, self.x2 - other.x2)

@dataclasses.dataclass(frozen=True)
class SwingCoefficients:
    """Coefficients of the equivalent swing equation M x2' = T_m - T_e - D x1'."""

    M_eq: float
    T_m_eq: float
    T_e_eq: float
    D_eq: float
