from __future__ import annotations
import logging
import math
import time
import typing
import numpy as np
from tlroa                   import utils
from tlroa.datatypes         import (Scenario, Phase, State, SaturationMode, Trajectory, BoundaryCurve,
                                     Verdict, AssessmentResult, SweepPoint, ClearingWindow, ClearingSweep)
from tlroa.lyapunov          import LyapunovSeed, build_seed
from tlroa.model.equilibrium import equilibrium
from tlroa.ode               import IntegratorConfig, integrate_forward
from tlroa.parallel          import parallel_map
from tlroa.roa.forward       import classify_initial_state
from tlroa.roa.geometry      import contains, translate_curve

__all__ = [
    'neighbor_order',
    'fault_trajectory',
    'membership_verdict',
    'assess',
    'clearing_times',
    'coalesce_windows',
    'clearing_windows'
]

logger = logging.getLogger(__name__)

def neighbor_order(k_max: int) -> typing.List[int]:
    """Translations tried by membership tests: 0, 1, -1, 2, -2, ..."""

    order = [0]

    for k in range(1, k_max + 1):
        order += [k, -k]

    return order

def fault_trajectory(sc: Scenario,
                     t_clear: typing.Optional[float] = None,
                     cfg: typing.Optional[IntegratorConfig] = None,
                     sat_mode: typing.Optional[SaturationMode] = None
) -> Trajectory:
    """During-fault trajectory from the pre-fault equilibrium until `t_clear`.

    Angles are raw; `Trajectory.wrapped()` gives the view in (-pi, pi]. A fault
    cleared the instant it is applied yields the equilibrium alone.
    """

    t_clear = sc.t_fault_clear if t_clear is None else t_clear
    x_pre   = equilibrium(sc, Phase.PREFAULT)

    if t_clear < sc.t_fault_start:
        raise ValueError(f'clearing time {t_clear} precedes the fault ({sc.t_fault_start})')

    if t_clear == sc.t_fault_start:
        return Trajectory(np.array([t_clear]), x_pre.as_array().reshape(1, 2))

    return integrate_forward(x_pre, sc.t_fault_start, t_clear, sc.with_clearing_time(t_clear), cfg, sat_mode)

def membership_verdict(state: State, home: BoundaryCurve, k_max: int = 2) -> typing.Tuple[Verdict, typing.Tuple[int, ...]]:
    """Verdict of the first translated curve containing `state`, and the translations tried.

    The basin index is relative to the untranslated equilibrium, so a `home` that
    is itself shifted by `m` shifts every verdict by `m`.
    """

    tried = []

    for k in neighbor_order(k_max):
        tried.append(k)

        if contains(translate_curve(home, k), state):
            return Verdict.from_basin(home.shift + k), tuple(tried)

    return Verdict.unstable(), tuple(tried)

def assess(sc: Scenario,
           t_clear: float,
           home: BoundaryCurve,
           k_max: int = 2,
           cfg: typing.Optional[IntegratorConfig] = None,
           sat_mode: typing.Optional[SaturationMode] = None,
           seed: typing.Optional[LyapunovSeed] = None,
           trajectory: typing.Optional[Trajectory] = None
) -> AssessmentResult:
    """Stability verdict for a fault cleared at `t_clear`.

    The raw post-fault state is tested against `home` and its translations by
    `2*pi*k`, `|k| <= k_max`. A `trajectory` already integrated up to `t_clear`
    is reused instead of running the fault again. With a `seed`, the verdict is
    also checked by a forward run of the post-fault dynamics.
    """

    if trajectory is None:
        trajectory = fault_trajectory(sc, t_clear, cfg, sat_mode)
    elif trajectory.times[-1] != t_clear:
        raise ValueError(f'fault trajectory ends at {trajectory.times[-1]} s, not at the clearing time {t_clear} s')

    state          = trajectory.end
    verdict, tried = membership_verdict(state, home, k_max)
    simulated      = None
    note           = ''

    if seed is not None:
        check     = classify_initial_state(state, sc, seed, cfg, sat_mode, t0=sc.t_fault_clear)
        simulated = check.verdict
        note      = check.note

    logger.info('fault cleared at %.6g s: %s', t_clear, verdict)

    result = AssessmentResult(
        clearing_time    = t_clear,
        post_fault_state = state,
        wrapped_state    = State(utils.wrap_angle(state.x1), state.x2),
        verdict          = verdict,
        shifts_tested    = tried,
        scenario_hash    = sc.digest(),
        simulated        = simulated,
        note             = note
    )

    if result.is_violation:
        logger.warning('clearing at %.6g s: membership says %s but simulation says %s', t_clear, verdict, simulated)

    return result

def clearing_times(t_start: float, t_stop: float, dt: float) -> np.ndarray:
    """Grid `t_start, t_start + dt, ...` up to and including `t_stop`."""

    if not dt > 0:
        raise ValueError(f'time step must be greater than zero (got {dt})')

    if t_stop < t_start:
        raise ValueError(f'empty clearing time range [{t_start}, {t_stop}]')

    n = int(math.floor((t_stop - t_start) / dt + 1e-9)) + 1

    return np.round(t_start + dt * np.arange(n), 12)

def coalesce_windows(points: typing.Sequence[SweepPoint]) -> typing.List[ClearingWindow]:
    windows = []

    for point in points:
        if windows and windows[-1].verdict == point.verdict:
            windows[-1] = ClearingWindow(windows[-1].t_first, point.clearing_time, point.verdict)
        else:
            windows.append(ClearingWindow(point.clearing_time, point.clearing_time, point.verdict))

    return windows

def _run_count(sc: Scenario, points: typing.Sequence[SweepPoint]) -> int:
    """Fault runs started plus forward checks made; a fault cleared as it starts needs no run."""

    return sum(int(p.clearing_time > sc.t_fault_start) + int(p.post_fault_state is not None) for p in points)

class _SweepTask:
    def __init__(self, sc, home, k_max, seed, cfg, sat_mode):
        self.sc       = sc
        self.home     = home
        self.k_max    = k_max
        self.seed     = seed
        self.cfg      = cfg
        self.sat_mode = sat_mode

    def __call__(self, t_clear: float) -> SweepPoint:
        try:
            state = fault_trajectory(self.sc, t_clear, self.cfg, self.sat_mode).end
        except Exception as exc:
            note = f'{exc.__class__.__name__}: {exc}'
            return SweepPoint(t_clear, None, Verdict.unstable(), Verdict.unstable(), note)

        verdict, _ = membership_verdict(state, self.home, self.k_max)

        # Post-fault dynamics only depend on the time since clearing.
        check = classify_initial_state(state, self.sc, self.seed, self.cfg, self.sat_mode, t0=self.sc.t_fault_clear)

        return SweepPoint(t_clear, state, verdict, check.verdict, check.note)

def clearing_windows(sc: Scenario,
                     t_range: typing.Tuple[float, float],
                     dt: float,
                     home: BoundaryCurve,
                     k_max: int = 2,
                     seed: typing.Optional[LyapunovSeed] = None,
                     cfg: typing.Optional[IntegratorConfig] = None,
                     sat_mode: typing.Optional[SaturationMode] = None,
                     jobs: int = 1
) -> ClearingSweep:
    """Sweeps the clearing time and groups equal verdicts into windows.

    Every point is also checked by a forward simulation of the post-fault
    dynamics. Points where membership claims stability but the simulation does
    not are logged as warnings; the opposite disagreement is expected, since the
    time-limited region is a subset of the full region of attraction.
    """

    cfg     = cfg or IntegratorConfig()
    seed    = seed or build_seed(sc, cfg=cfg, sat_mode=sat_mode)
    times   = clearing_times(t_range[0], t_range[1], dt)
    started = time.perf_counter()

    logger.info('sweeping %d clearing time(s) in [%g, %g] s', len(times), t_range[0], t_range[1])

    points  = parallel_map(_SweepTask(sc, home, k_max, seed, cfg, sat_mode), [float(t) for t in times], jobs)
    windows = coalesce_windows(points)
    elapsed = time.perf_counter() - started

    for point in points:
        if point.is_violation:
            logger.warning('clearing at %.6g s: membership says %s but simulation says %s',
                           point.clearing_time, point.verdict, point.simulated)
        elif not point.agrees:
            logger.info('clearing at %.6g s: %s by membership, %s by simulation',
                        point.clearing_time, point.verdict, point.simulated)

    return ClearingSweep(
        points           = points,
        windows          = windows,
        simulation_count = _run_count(sc, points),
        wall_time        = elapsed,
        scenario_hash    = sc.digest()
    )
