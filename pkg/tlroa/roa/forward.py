from __future__ import annotations
import dataclasses
import logging
import math
import time
import typing
import numpy as np
from tlroa.datatypes import Scenario, State, SaturationMode, Verdict, EventKind, GridSpec, ClassifiedGrid
from tlroa.lyapunov  import LyapunovSeed, build_seed
from tlroa.ode       import IntegratorConfig, integrate_forward
from tlroa.parallel  import parallel_map

__all__ = [
    'Classification',
    'classify_initial_state',
    'forward_roa'
]

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class Classification:
    verdict: Verdict
    settle_time: float = math.nan
    note: str = ''

def classify_initial_state(state: State,
                           sc: Scenario,
                           seed: LyapunovSeed,
                           cfg: typing.Optional[IntegratorConfig] = None,
                           sat_mode: typing.Optional[SaturationMode] = None,
                           t0: typing.Optional[float] = None
) -> Classification:
    """Forward-simulates the post-fault dynamics from `state` and labels the outcome.

    The run starts at `t0` (the clearing time by default) and lasts at most
    `cfg.max_time`. Entering the seed band translated by `2*pi*k` means the state
    settles at the equilibrium of basin `k`. Integration errors are reported as
    unstable with a note.
    """

    cfg = cfg or IntegratorConfig()
    t0  = sc.t_fault_clear if t0 is None else t0

    try:
        traj = integrate_forward(state, t0, t0 + cfg.max_time, sc, cfg, sat_mode, band=seed, reference=seed.x_eq)
    except Exception as exc:
        return Classification(Verdict.unstable(), note=f'{exc.__class__.__name__}: {exc}')

    event = traj.last_event()

    if event is not None and event.kind == EventKind.TOLERANCE_BAND_ENTERED:
        return Classification(Verdict.from_basin(event.basin), event.time - t0)

    if event is not None and event.kind == EventKind.DIVERGENCE_DETECTED:
        return Classification(Verdict.unstable(), note='diverged')

    return Classification(Verdict.unstable(), note=f'not settled within {cfg.max_time:g} s')

class _CellTask:
    def __init__(self, sc, seed, cfg, sat_mode):
        self.sc       = sc
        self.seed     = seed
        self.cfg      = cfg
        self.sat_mode = sat_mode

    def __call__(self, cell: typing.Tuple[float, float]) -> Classification:
        return classify_initial_state(State(*cell), self.sc, self.seed, self.cfg, self.sat_mode)

def forward_roa(sc: Scenario,
                seed: typing.Optional[LyapunovSeed] = None,
                grid: typing.Optional[GridSpec] = None,
                cfg: typing.Optional[IntegratorConfig] = None,
                sat_mode: typing.Optional[SaturationMode] = None,
                jobs: int = 1
) -> ClassifiedGrid:
    """Classifies the centre of every cell of `grid` by forward simulation."""

    cfg     = cfg or IntegratorConfig()
    grid    = grid or GridSpec()
    seed    = seed or build_seed(sc, cfg=cfg, sat_mode=sat_mode)
    started = time.perf_counter()

    deltas, omegas = grid.centers(seed.x_eq.x1)
    cells          = [(float(d), float(w)) for d in deltas for w in omegas]

    logger.info('classifying %d cells (%dx%d) with %s job(s)', len(cells), grid.n_delta, grid.n_omega, jobs)

    results = parallel_map(_CellTask(sc, seed, cfg, sat_mode), cells, jobs)

    shape       = (len(deltas), len(omegas))
    stable      = np.zeros(shape, dtype=bool)
    basin       = np.zeros(shape, dtype=int)
    settle_time = np.full(shape, np.nan)
    notes       = {}

    for index, result in enumerate(results):
        i, j = divmod(index, len(omegas))

        stable[i, j]      = result.verdict.is_stable
        basin[i, j]       = result.verdict.basin
        settle_time[i, j] = result.settle_time

        if result.note and result.note != 'diverged' and not result.note.startswith('not settled'):
            notes[(i, j)] = result.note

    elapsed = time.perf_counter() - started

    logger.info('classified %d cells in %.3f s (%d stable, %d error note(s))',
                len(cells), elapsed, int(stable.sum()), len(notes))

    return ClassifiedGrid(
        deltas           = deltas,
        omegas           = omegas,
        stable           = stable,
        basin            = basin,
        settle_time      = settle_time,
        notes            = notes,
        simulation_count = len(cells),
        wall_time        = elapsed,
        scenario_hash    = sc.digest()
    )
