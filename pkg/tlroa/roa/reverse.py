from __future__ import annotations
import logging
import typing
import warnings
import numpy as np
from tlroa.datatypes     import Scenario, State, SaturationMode, BoundaryCurve
from tlroa.exceptions    import HardSaturationNotReversible, SamplerBudgetExceeded
from tlroa.lyapunov      import LyapunovSeed, build_seed, seed_point
from tlroa.ode           import IntegratorConfig, integrate_reverse
from tlroa.roa.geometry  import self_intersections, repair_self_intersections
from tlroa.sampling      import SamplerConfig, SampleSet, run_sampler, refine_intervals

__all__ = [
    'ReverseEndpoint',
    'sample_boundary',
    'untangle',
    'curve_from_samples',
    'estimate_tlroa'
]

logger = logging.getLogger(__name__)

UNTANGLE_ROUNDS = 8

class ReverseEndpoint:
    """Maps `theta` to the end of the reverse-time run started at seed point `theta`.

    The run covers `t_back` seconds of post-fault steady dynamics and then the
    whole recovery ramp, ending at the clearing instant.
    """

    def __init__(self,
                 sc: Scenario,
                 seed: LyapunovSeed,
                 t_back: float,
                 cfg: typing.Optional[IntegratorConfig] = None,
                 sat_mode: typing.Optional[SaturationMode] = None
    ):
        self.sc       = sc
        self.seed     = seed
        self.duration = t_back + sc.ramp_duration
        self.cfg      = cfg
        self.sat_mode = sat_mode

    def __call__(self, theta: float) -> State:
        start = seed_point(self.seed, theta)

        return integrate_reverse(start, self.duration, self.sc, self.cfg, self.sat_mode).end

def _check_reversible(sc: Scenario, sat_mode: typing.Optional[SaturationMode]) -> SaturationMode:
    mode = SaturationMode(sc.params.sat_mode if sat_mode is None else sat_mode)

    if mode == SaturationMode.HARD:
        raise HardSaturationNotReversible()

    return mode

def untangle(f: typing.Callable[[float], State],
             samples: SampleSet,
             budget: int,
             jobs: int = 1,
             rounds: int = UNTANGLE_ROUNDS
) -> SampleSet:
    """Bisects the intervals whose edges cross until the polygon of `samples` is simple.

    The endpoints of a reverse-time run trace the image of the seed ellipse, a
    simple closed curve, so a crossing means two edges cut across an arm that is
    sampled too coarsely. Stops after `rounds` rounds or once `budget` samples exist.
    """

    for _ in range(rounds):
        crossings = self_intersections(samples.points)

        if not crossings or len(samples) >= budget:
            break

        intervals = sorted({k for pair in crossings for k in pair})[:budget - len(samples)]

        logger.info('refining %d interval(s) around %d crossing(s)', len(intervals), len(crossings))

        samples = refine_intervals(f, samples, intervals, jobs)

    return samples

def sample_boundary(sc: Scenario,
                    seed: LyapunovSeed,
                    t_back: float = 1.0,
                    sampler: typing.Optional[SamplerConfig] = None,
                    cfg: typing.Optional[IntegratorConfig] = None,
                    sat_mode: typing.Optional[SaturationMode] = None,
                    jobs: int = 1
) -> SampleSet:
    """Adaptive samples of reverse-time endpoints, refined where their polygon crosses itself.

    Untangling may add up to `sampler.n_max` samples beyond the sampler budget.
    """

    mode = _check_reversible(sc, sat_mode)

    if not t_back > 0:
        raise ValueError(f't_back must be greater than zero (got {t_back})')

    sampler  = sampler or SamplerConfig()
    endpoint = ReverseEndpoint(sc, seed, t_back, cfg, mode)
    samples  = run_sampler(endpoint, sampler, jobs)

    return untangle(endpoint, samples, 2 * sampler.n_max, jobs)

def _thetas_at(thetas: np.ndarray, positions: typing.Sequence[float]) -> np.ndarray:
    """Seed angles at fractional positions along the cyclic sample sequence."""

    n     = len(thetas)
    cycle = np.append(thetas, thetas[0] + 2 * np.pi)

    return np.mod(np.interp(positions, np.arange(n + 1), cycle), 2 * np.pi)

def curve_from_samples(samples: SampleSet, sc: Scenario, t_back: float) -> BoundaryCurve:
    vertices, positions, notes = repair_self_intersections(samples.points)

    if not samples.goal_met:
        message = f'loss goal {samples.loss_goal:g} not met with {len(samples)} samples (max loss {samples.max_loss:.4g})'

        notes.append(message)
        logger.warning(message)
        warnings.warn(message, SamplerBudgetExceeded, stacklevel=3)

    return BoundaryCurve(
        base_vertices = vertices,
        t_back        = t_back,
        thetas        = _thetas_at(samples.thetas, positions),
        scenario_hash = sc.digest(),
        sample_count  = len(samples),
        loss_kind     = samples.loss_kind.label,
        loss_goal     = samples.loss_goal,
        max_loss      = samples.max_loss,
        warnings      = notes
    )

def estimate_tlroa(sc: Scenario,
                   seed: typing.Optional[LyapunovSeed] = None,
                   t_back: float = 1.0,
                   sampler: typing.Optional[SamplerConfig] = None,
                   cfg: typing.Optional[IntegratorConfig] = None,
                   sat_mode: typing.Optional[SaturationMode] = None,
                   jobs: int = 1
) -> BoundaryCurve:
    """Time-limited region of attraction of the post-fault equilibrium.

    Seed points chosen by the adaptive sampler are integrated backward over
    `t_back` plus the recovery ramp; their endpoints, ordered by angle, form the
    boundary. An unmet loss goal issues `SamplerBudgetExceeded` and is recorded in
    the curve's warnings.
    """

    mode    = _check_reversible(sc, sat_mode)
    seed    = seed or build_seed(sc, cfg=cfg, sat_mode=mode)
    samples = sample_boundary(sc, seed, t_back, sampler, cfg, mode, jobs)

    logger.info('TLRoA for t_back=%g s from %d reverse run(s)', t_back, samples.evaluations)

    return curve_from_samples(samples, sc, t_back)
