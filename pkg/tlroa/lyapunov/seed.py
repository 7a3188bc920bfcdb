from __future__ import annotations
import dataclasses
import logging
import math
import typing
import numpy as np
from tlroa.datatypes         import Scenario, Phase, State, SaturationMode
from tlroa.exceptions        import SeedTooLarge
from tlroa.lyapunov.solver   import solve_lyapunov_2x2
from tlroa.model.equilibrium import equilibrium
from tlroa.model.swing       import VectorField
from tlroa.ode               import IntegratorConfig, integrate_forward

__all__ = [
    'LyapunovSeed',
    'seed_point',
    'build_seed'
]

logger = logging.getLogger(__name__)

SEED_SEMI_AXIS = 0.05
CHECK_TIME     = 0.1
MAX_HALVINGS   = 20
LEVEL_RTOL     = 1e-12

@dataclasses.dataclass(frozen=True, eq=False)
class LyapunovSeed:
    """Level set `{x : (x - x_eq)^T P (x - x_eq) = c}` of a quadratic Lyapunov function.

    The ellipse is the starting set of reverse-time runs and, translated by
    multiples of 2*pi in angle, the tolerance band of forward runs.
    """

    P: np.ndarray
    c: float
    x_eq: State
    validation_runs: int = 0
    halvings: int = 0

    def __post_init__(self):
        p = np.asarray(self.P, dtype=float)

        if p.shape != (2, 2) or not np.allclose(p, p.T, rtol=0, atol=1e-12 * np.abs(p).max()):
            raise ValueError('P must be a symmetric 2x2 matrix')

        if np.any(np.linalg.eigvalsh(p) <= 0):
            raise ValueError('P must be positive definite')

        if not self.c > 0:
            raise ValueError(f'level value must be greater than zero (got {self.c})')

        object.__setattr__(self, 'P', p)

    def _offset(self, y) -> np.ndarray:
        return np.asarray(y, dtype=float) - self.x_eq.as_array()

    def value(self, y) -> float:
        """`V(y) = (y - x_eq)^T P (y - x_eq)`; `y` is a `State` or a pair."""

        if isinstance(y, State):
            y = y.as_array()

        d = self._offset(y)

        return float(d @ self.P @ d)

    def band_index(self, y) -> int:
        """2*pi shift of the translated band nearest to `y`."""

        return int(round((y[0] - self.x_eq.x1) / (2 * math.pi)))

    def band_value(self, y) -> float:
        """`V - c` measured from the nearest translated equilibrium; negative inside a band."""

        d     = self._offset(y)
        d[0] -= 2 * math.pi * self.band_index(y)

        return float(d @ self.P @ d) - self.c

    def contains(self, s: State) -> bool:
        """Whether `s` lies inside the ellipse, its rounded boundary points included."""

        return self.value(s) <= self.c * (1 + LEVEL_RTOL)

    @property
    def semi_axes(self) -> typing.Tuple[float, float]:
        lo, hi = np.linalg.eigvalsh(self.P)

        return math.sqrt(self.c / lo), math.sqrt(self.c / hi)

    @property
    def area(self) -> float:
        return math.pi * self.c / math.sqrt(np.linalg.det(self.P))

    def boundary(self, n: int = 256) -> np.ndarray:
        """`n` points of the level set, evenly spaced in the ellipse's own parameter."""

        w, v   = np.linalg.eigh(self.P)
        root   = v @ np.diag(1 / np.sqrt(w)) @ v.T
        phi    = 2 * math.pi * np.arange(n) / n
        circle = np.vstack([np.cos(phi), np.sin(phi)])

        return self.x_eq.as_array() + (math.sqrt(self.c) * root @ circle).T

    def with_level(self, c: float) -> LyapunovSeed:
        return dataclasses.replace(self, c=c)

def seed_point(seed: LyapunovSeed, theta: float) -> State:
    """Point of the seed ellipse in direction `theta` from the equilibrium."""

    u = np.array([math.cos(theta), math.sin(theta)])
    r = math.sqrt(seed.c / float(u @ seed.P @ u))

    return State(seed.x_eq.x1 + r * u[0], seed.x_eq.x2 + r * u[1])

def _decreasing(seed: LyapunovSeed, field: VectorField, times: np.ndarray, states: np.ndarray) -> bool:
    for t, y in zip(times, states):
        d    = seed._offset(y)
        vdot = 2 * float(d @ seed.P @ field(t, y))

        if not vdot < 0:
            return False

    return True

def build_seed(sc: Scenario,
               c: typing.Optional[float] = None,
               n_check: int = 64,
               cfg: typing.Optional[IntegratorConfig] = None,
               sat_mode: typing.Optional[SaturationMode] = None,
               q: typing.Optional[np.ndarray] = None
) -> LyapunovSeed:
    """Validated Lyapunov seed around the post-fault equilibrium of `sc`.

    `P` solves the Lyapunov equation of the linearization with `Q = q` (identity
    by default). The level `c` defaults to the value whose largest semi-axis is
    0.05 rad. It is validated by running `n_check` boundary points forward for
    0.1 s and requiring `V` to decrease at every step; on failure `c` is halved,
    at most 20 times.
    """

    if n_check < 1:
        raise ValueError(f'n_check must be at least 1 (got {n_check})')

    x_eq  = equilibrium(sc, Phase.POSTFAULT)
    field = VectorField(sc, Phase.POSTFAULT, sat_mode)
    t0    = sc.t_ramp_end
    a     = field.jacobian(t0, x_eq.as_array())
    p     = solve_lyapunov_2x2(a, np.eye(2) if q is None else q)

    if c is None:
        c = SEED_SEMI_AXIS ** 2 * float(np.linalg.eigvalsh(p)[0])

    seed = LyapunovSeed(p, c, x_eq)
    runs = 0

    for halving in range(MAX_HALVINGS + 1):
        valid = True

        for i in range(n_check):
            start = seed_point(seed, 2 * math.pi * i / n_check)
            traj  = integrate_forward(start, t0, t0 + CHECK_TIME, sc, cfg, sat_mode)
            runs += 1

            if not _decreasing(seed, field, traj.times, traj.states):
                valid = False
                break

        if valid:
            logger.info('seed level c=%.6g validated after %d halving(s) and %d run(s)', seed.c, halving, runs)

            return dataclasses.replace(seed, validation_runs=runs, halvings=halving)

        logger.debug('seed level c=%.6g failed validation; halving', seed.c)
        seed = seed.with_level(seed.c / 2)

    raise SeedTooLarge(f'seed validation failed after {MAX_HALVINGS} halvings (last c={seed.c * 2:.6g})')
