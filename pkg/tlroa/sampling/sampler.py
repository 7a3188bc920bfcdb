from __future__ import annotations
import dataclasses
import logging
import math
import time
import typing
import numpy as np
from enum                   import IntEnum, auto
from tlroa.datatypes        import State
from tlroa.datatypes.params import InvalidParameter
from tlroa.exceptions       import SamplerError
from tlroa.parallel         import default_jobs, parallel_map
from tlroa.sampling.loss    import LossKind, interval_losses

__all__ = [
    'SamplerConfig',
    'TerminationReason',
    'SampleSet',
    'Evaluation',
    'run_sampler',
    'refine_intervals',
    'dense_reference'
]

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class SamplerConfig:
    loss_kind: LossKind = LossKind.CURVATURE
    loss_goal: float = 0.03
    n_min: int = 16
    n_max: int = 512
    batch_size: typing.Optional[int] = None
    """Number of worst intervals bisected per round, evaluated concurrently; one per worker if None."""

    def __post_init__(self):
        object.__setattr__(self, 'loss_kind', LossKind(self.loss_kind))

        if not self.loss_goal > 0:
            raise InvalidParameter(self.__class__, 'loss_goal', self.loss_goal, 'must be greater than zero')

        if self.n_min < 4:
            raise InvalidParameter(self.__class__, 'n_min', self.n_min, 'must be at least 4')

        if self.n_max < self.n_min:
            raise InvalidParameter(self.__class__, 'n_max', self.n_max, f'must not be less than n_min ({self.n_min})')

        if self.batch_size is not None and self.batch_size < 1:
            raise InvalidParameter(self.__class__, 'batch_size', self.batch_size, 'must be at least 1')

class TerminationReason(IntEnum):
    GOAL_MET         = auto()
    BUDGET_EXHAUSTED = auto()

    @property
    def label(self) -> str:
        return ''.join(part.capitalize() for part in self.name.split('_'))

@dataclasses.dataclass(frozen=True)
class Evaluation:
    """Result of one boundary evaluation, as returned by a worker."""

    theta: float
    point: typing.Optional[typing.Tuple[float, float]] = None
    error: str = ''

@dataclasses.dataclass(eq=False)
class SampleSet:
    """Samples `(theta, f(theta))` sorted by `theta` in `[0, 2*pi)`.

    `losses[i]` is the loss of the cyclic interval starting at sample `i`, and
    `insertion_index[i]` the order in which sample `i` was evaluated.
    """

    thetas: np.ndarray
    points: np.ndarray
    insertion_index: np.ndarray
    losses: np.ndarray
    reason: TerminationReason
    evaluations: int
    loss_kind: LossKind
    loss_goal: float
    wall_time: typing.Optional[float] = None

    def __len__(self) -> int:
        return len(self.thetas)

    @property
    def max_loss(self) -> float:
        return float(self.losses.max())

    @property
    def goal_met(self) -> bool:
        return self.reason == TerminationReason.GOAL_MET

    def states(self) -> typing.List[State]:
        return [State.from_array(p) for p in self.points]

class _Evaluator:
    def __init__(self, f: typing.Callable[[float], typing.Any]):
        self.f = f

    def __call__(self, theta: float) -> Evaluation:
        try:
            value = self.f(theta)
        except Exception as exc:
            return Evaluation(theta, error=f'{exc.__class__.__name__}: {exc}')

        if isinstance(value, Evaluation):
            return value

        if isinstance(value, State):
            return Evaluation(theta, (value.x1, value.x2))

        return Evaluation(theta, (float(value[0]), float(value[1])))

def _evaluate(f, thetas: typing.List[float], jobs: int) -> typing.List[np.ndarray]:
    results = parallel_map(_Evaluator(f), thetas, jobs)
    points  = []

    for result in results:
        if result.error:
            raise SamplerError(result.theta, result.error)

        points.append(np.array(result.point, dtype=float))

    return points

def _midpoint(thetas: typing.List[float], i: int) -> float:
    left  = thetas[i]
    right = thetas[i + 1] if i + 1 < len(thetas) else thetas[0] + 2 * math.pi
    mid   = left + (right - left) / 2

    return mid - 2 * math.pi if mid >= 2 * math.pi else mid

def _insert(thetas: list, points: list, order: list, count: int, new: typing.List[float], values: typing.List[np.ndarray]) -> int:
    for theta, point in zip(new, values):
        at = int(np.searchsorted(thetas, theta))

        thetas.insert(at, theta)
        points.insert(at, point)
        order.insert(at, count)
        count += 1

    return count

def run_sampler(f: typing.Callable[[float], typing.Any],
                cfg: typing.Optional[SamplerConfig] = None,
                jobs: typing.Optional[int] = 1
) -> SampleSet:
    """Adaptively samples the closed curve `theta -> f(theta)` on `[0, 2*pi)`.

    Starts from `cfg.n_min` uniform angles and repeatedly bisects the
    `cfg.batch_size` intervals of largest loss (ties go to the lower index) until
    every interval loss is below `cfg.loss_goal` or `cfg.n_max` samples exist.
    Without a batch size, each round bisects one interval per worker, so the
    samples then depend on `jobs`.

    `f` returns a `State` or a `(delta, omega)` pair and must be picklable when
    `jobs > 1`. A failing evaluation raises `SamplerError` with its angle.
    """

    cfg     = cfg or SamplerConfig()
    batch   = max(1, default_jobs() if jobs is None else jobs)
    started = time.perf_counter()

    thetas = [2 * math.pi * i / cfg.n_min for i in range(cfg.n_min)]
    points = _evaluate(f, thetas, jobs)
    order  = list(range(cfg.n_min))
    count  = cfg.n_min

    while True:
        losses = interval_losses(cfg.loss_kind, np.array(thetas), np.array(points))

        if losses.max() < cfg.loss_goal:
            reason = TerminationReason.GOAL_MET
            break

        if len(thetas) >= cfg.n_max:
            reason = TerminationReason.BUDGET_EXHAUSTED
            break

        width = min(cfg.batch_size or batch, cfg.n_max - len(thetas))
        worst = sorted(range(len(thetas)), key=lambda i: (-losses[i], i))[:width]
        new   = [_midpoint(thetas, i) for i in sorted(worst)]

        logger.debug('refining %d interval(s); max loss %.6g', len(new), losses.max())

        count = _insert(thetas, points, order, count, new, _evaluate(f, new, jobs))

    elapsed = time.perf_counter() - started

    logger.info('%s sampler stopped with %d samples (%s, max loss %.4g) in %.3f s',
                cfg.loss_kind.label, len(thetas), reason.label, losses.max(), elapsed)

    return SampleSet(
        thetas          = np.array(thetas),
        points          = np.array(points),
        insertion_index = np.array(order),
        losses          = losses,
        reason          = reason,
        evaluations     = count,
        loss_kind       = cfg.loss_kind,
        loss_goal       = cfg.loss_goal,
        wall_time       = elapsed
    )

def refine_intervals(f: typing.Callable[[float], typing.Any],
                     samples: SampleSet,
                     intervals: typing.Iterable[int],
                     jobs: typing.Optional[int] = 1
) -> SampleSet:
    """Bisects the given cyclic intervals of `samples` and recomputes every loss."""

    started = time.perf_counter()
    thetas  = list(samples.thetas)
    points  = list(samples.points)
    order   = list(samples.insertion_index)
    new     = [_midpoint(thetas, i) for i in sorted(set(intervals))]
    count   = _insert(thetas, points, order, samples.evaluations, new, _evaluate(f, new, jobs))
    losses  = interval_losses(samples.loss_kind, np.array(thetas), np.array(points))
    reason  = TerminationReason.GOAL_MET if losses.max() < samples.loss_goal else TerminationReason.BUDGET_EXHAUSTED

    logger.debug('bisected %d interval(s) on request', len(new))

    return dataclasses.replace(
        samples,
        thetas          = np.array(thetas),
        points          = np.array(points),
        insertion_index = np.array(order),
        losses          = losses,
        reason          = reason,
        evaluations     = count,
        wall_time       = (samples.wall_time or 0.0) + time.perf_counter() - started
    )

def dense_reference(f: typing.Callable[[float], typing.Any], n: int = 512, jobs: int = 1) -> SampleSet:
    """`f` evaluated on `n` uniform angles."""

    cfg = SamplerConfig(LossKind.HOMOGENEOUS, loss_goal=1.5 / n, n_min=n, n_max=n)

    return run_sampler(f, cfg, jobs)
