from __future__ import annotations
import dataclasses
import math
import typing
import numpy as np
from tlroa.datatypes.verdict import Verdict, VerdictKind

__all__ = [
    'GridSpec',
    'ClassifiedGrid'
]

@dataclasses.dataclass(frozen=True)
class GridSpec:
    """Window and resolution of the forward-simulation grid.

    `delta_range = None` centres the angle window on the equilibrium with a half
    width of `delta_half_width` (3*pi by default).
    """

    delta_range: typing.Optional[typing.Tuple[float, float]] = None
    omega_range: typing.Tuple[float, float] = (-20 * math.pi, 20 * math.pi)
    n_delta: int = 80
    n_omega: int = 40
    delta_half_width: float = 3 * math.pi

    def __post_init__(self):
        if self.n_delta < 1 or self.n_omega < 1:
            raise ValueError(f'grid resolution must be positive (got {self.n_delta}x{self.n_omega})')

        if not self.omega_range[1] > self.omega_range[0]:
            raise ValueError(f'invalid omega range {self.omega_range}')

        if self.delta_range is not None and not self.delta_range[1] > self.delta_range[0]:
            raise ValueError(f'invalid delta range {self.delta_range}')

    @property
    def cell_count(self) -> int:
        return self.n_delta * self.n_omega

    def resolve_delta_range(self, delta_eq: float) -> typing.Tuple[float, float]:
        if self.delta_range is not None:
            return tuple(self.delta_range)

        return (delta_eq - self.delta_half_width, delta_eq + self.delta_half_width)

    def centers(self, delta_eq: float) -> typing.Tuple[np.ndarray, np.ndarray]:
        """Cell-centre coordinates along both axes."""

        d_lo, d_hi = self.resolve_delta_range(delta_eq)
        w_lo, w_hi = self.omega_range

        deltas = d_lo + (np.arange(self.n_delta) + 0.5) * (d_hi - d_lo) / self.n_delta
        omegas = w_lo + (np.arange(self.n_omega) + 0.5) * (w_hi - w_lo) / self.n_omega

        return deltas, omegas

@dataclasses.dataclass(eq=False)
class ClassifiedGrid:
    """Forward-simulated labels of a grid of initial states.

    Arrays are indexed `[i_delta, j_omega]`. `basin` holds the 2*pi shift of the
    equilibrium a stable cell settles at; `settle_time` is NaN for unstable cells.
    """

    deltas: np.ndarray
    omegas: np.ndarray
    stable: np.ndarray
    basin: np.ndarray
    settle_time: np.ndarray
    notes: typing.Dict[typing.Tuple[int, int], str] = dataclasses.field(default_factory=dict)
    simulation_count: int = 0
    wall_time: typing.Optional[float] = None
    scenario_hash: str = ''

    def __post_init__(self):
        shape = (len(self.deltas), len(self.omegas))

        for name in ('stable', 'basin', 'settle_time'):
            if np.shape(getattr(self, name)) != shape:
                raise ValueError(f"'{name}' has shape {np.shape(getattr(self, name))}, expected {shape}")

    @property
    def resolution(self) -> typing.Tuple[int, int]:
        return len(self.deltas), len(self.omegas)

    @property
    def delta_range(self) -> typing.Tuple[float, float]:
        half = self.cell_size[0] / 2

        return float(self.deltas[0] - half), float(self.deltas[-1] + half)

    @property
    def omega_range(self) -> typing.Tuple[float, float]:
        half = self.cell_size[1] / 2

        return float(self.omegas[0] - half), float(self.omegas[-1] + half)

    @property
    def cell_size(self) -> typing.Tuple[float, float]:
        dd = float(self.deltas[1] - self.deltas[0]) if len(self.deltas) > 1 else math.nan
        dw = float(self.omegas[1] - self.omegas[0]) if len(self.omegas) > 1 else math.nan

        return dd, dw

    def label(self, i: int, j: int) -> Verdict:
        if not self.stable[i, j]:
            return Verdict.unstable()

        return Verdict.from_basin(int(self.basin[i, j]))

    def kinds(self) -> np.ndarray:
        """Matrix of `VerdictKind` values."""

        kinds = np.full(self.resolution, int(VerdictKind.UNSTABLE), dtype=int)
        kinds[self.stable & (self.basin == 0)] = int(VerdictKind.STABLE_HOME)
        kinds[self.stable & (self.basin != 0)] = int(VerdictKind.STABLE_NEIGHBOR)

        return kinds

    def counts(self) -> typing.Dict[VerdictKind, int]:
        kinds = self.kinds()

        return {kind: int(np.count_nonzero(kinds == int(kind))) for kind in VerdictKind}

    def home_area(self) -> float:
        """Phase-plane area of the cells settling at the home equilibrium."""

        dd, dw = self.cell_size

        return self.counts()[VerdictKind.STABLE_HOME] * dd * dw
