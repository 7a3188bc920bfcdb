from __future__ import annotations
import logging
import typing
import numpy as np
from more_itertools    import pairwise
from scipy.integrate   import solve_ivp
from tlroa.datatypes   import Scenario, Phase, State, SaturationMode, Trajectory, Event, EventKind, Direction
from tlroa.exceptions  import StepFailure, HardSaturationNotReversible
from tlroa.model.swing import VectorField
from tlroa.ode.config  import IntegratorConfig

__all__ = [
    'integrate_forward',
    'integrate_reverse'
]

logger = logging.getLogger(__name__)

def _switch_events(sc: Scenario, t: float) -> typing.List[EventKind]:
    kinds = []

    if t == sc.t_fault_start:
        kinds.append(EventKind.FAULT_APPLIED)

    if t == sc.t_fault_clear:
        kinds.append(EventKind.FAULT_CLEARED)

        if sc.ramp_duration > 0:
            kinds.append(EventKind.RAMP_STARTED)

    if sc.ramp_duration > 0 and t == sc.t_ramp_end:
        kinds.append(EventKind.RAMP_ENDED)

    return kinds

def _breakpoints(sc: Scenario, t0: float, t_end: float) -> typing.List[float]:
    return [t0] + [t for t in sc.switch_times() if t0 < t < t_end] + [t_end]

def _divergence_event(x1_ref: float, radius: float):
    def event(t, y):
        return radius - abs(y[0] - x1_ref)

    event.terminal  = True
    event.direction = -1

    return event

def _band_event(band):
    def event(t, y):
        return band.band_value(y)

    event.terminal  = True
    event.direction = -1

    return event

class _ReversedField:
    """`dx/ds = -f(origin - s, x)`: the flow of `field` on a backward clock."""

    def __init__(self, field: VectorField, origin: float):
        self.field  = field
        self.origin = origin

    def __call__(self, s: float, y: typing.Sequence[float]) -> np.ndarray:
        return -self.field(self.origin - s, y)

def _solve(fun, t_span, y0: np.ndarray, cfg: IntegratorConfig, events=None):
    sol = solve_ivp(
        fun,
        t_span,
        y0,
        method   = 'RK45',
        rtol     = cfg.rel_tol,
        atol     = cfg.abs_tol,
        max_step = cfg.max_step,
        events   = events
    )

    if sol.status == -1:
        raise StepFailure(f'integration failed on [{t_span[0]:.6g}, {t_span[1]:.6g}] s: {sol.message}')

    return sol

class _Recorder:
    __slots__ = ('times', 'states', 'events')

    def __init__(self, t0: float, y0: np.ndarray):
        self.times  = [t0]
        self.states = [np.array(y0, dtype=float)]
        self.events = []

    def extend(self, times: np.ndarray, states: np.ndarray) -> None:
        for t, y in zip(times, states.T):
            # Segment start points repeat the previous segment's end.
            if t > self.times[-1]:
                self.times.append(float(t))
                self.states.append(np.array(y, dtype=float))

    def trajectory(self, **kwargs) -> Trajectory:
        return Trajectory(np.array(self.times), np.vstack(self.states), self.events, **kwargs)

def integrate_forward(x0: State,
                      t0: float,
                      t_end: float,
                      sc: Scenario,
                      cfg: typing.Optional[IntegratorConfig] = None,
                      sat_mode: typing.Optional[SaturationMode] = None,
                      band = None,
                      reference: typing.Optional[State] = None
) -> Trajectory:
    """Integrates the scenario's dynamics from `x0` at `t0` until `t_end`.

    The schedule's switch times are integration boundaries, so each phase is a
    smooth segment and every switch time appears in the result. Integration stops
    early when:

    - `reference` is given and the angle moves `cfg.divergence_radius` further from
      it than `x0` started (`DIVERGENCE_DETECTED`), so a start several turns away
      may still settle in the nearest copy of the equilibrium;
    - `band` is given and, on the post-fault steady segment, the state enters it
      (`TOLERANCE_BAND_ENTERED`). `band` must provide `band_value(y)`, negative
      inside, and `band_index(y)`, the 2*pi shift of the band containing `y`.
    """

    if not t_end > t0:
        raise ValueError(f't_end must be later than t0 (got t0={t0}, t_end={t_end})')

    cfg      = cfg or IntegratorConfig()
    y        = x0.as_array()
    recorder = _Recorder(t0, y)
    stopped  = None

    if reference is not None:
        limit = cfg.divergence_radius + abs(x0.x1 - reference.x1)

    for a, b in pairwise(_breakpoints(sc, t0, t_end)):
        recorder.events.extend(Event(a, kind) for kind in _switch_events(sc, a))

        phase  = sc.phase_at(a)
        field  = VectorField(sc, phase, sat_mode)
        events = []
        kinds  = []

        if reference is not None:
            if abs(y[0] - reference.x1) > limit:
                stopped = Event(a, EventKind.DIVERGENCE_DETECTED)
                break

            events.append(_divergence_event(reference.x1, limit))
            kinds.append(EventKind.DIVERGENCE_DETECTED)

        if band is not None and phase == Phase.POSTFAULT:
            if band.band_value(y) <= 0:
                stopped = Event(a, EventKind.TOLERANCE_BAND_ENTERED, band.band_index(y))
                break

            events.append(_band_event(band))
            kinds.append(EventKind.TOLERANCE_BAND_ENTERED)

        sol = _solve(field, (a, b), y, cfg, events or None)
        recorder.extend(sol.t, sol.y)
        y = sol.y[:, -1]

        if sol.status == 1:
            fired = [(t_ev[0], i) for i, t_ev in enumerate(sol.t_events) if len(t_ev) > 0]
            t_ev, i = min(fired)
            kind    = kinds[i]
            basin   = band.band_index(y) if kind == EventKind.TOLERANCE_BAND_ENTERED else 0
            stopped = Event(float(t_ev), kind, basin)
            break

    if stopped is not None:
        recorder.events.append(stopped)
        logger.debug('forward run from (%.6g, %.6g) stopped at t=%.6g s: %s', x0.x1, x0.x2, stopped.time, stopped.kind.label)
    else:
        logger.debug('forward run from (%.6g, %.6g) reached t_end=%.6g s', x0.x1, x0.x2, t_end)

    return recorder.trajectory(direction=Direction.FORWARD, clock_origin=0.0)

def integrate_reverse(xT: State,
                      duration: float,
                      sc: Scenario,
                      cfg: typing.Optional[IntegratorConfig] = None,
                      sat_mode: typing.Optional[SaturationMode] = None,
                      t_start: typing.Optional[float] = None
) -> Trajectory:
    """Integrates backward in time from `xT` at `t_start + duration` down to `t_start`.

    `t_start` defaults to the fault clearing time, so the backward run crosses the
    post-fault steady segment first and then the recovery ramp. The result is on
    the backward clock `s = (t_start + duration) - t`.

    Hard saturation is refused since its flow cannot be reversed.
    """

    mode = SaturationMode(sc.params.sat_mode if sat_mode is None else sat_mode)

    if mode == SaturationMode.HARD:
        raise HardSaturationNotReversible()

    if not duration > 0:
        raise ValueError(f'reverse duration must be greater than zero (got {duration})')

    cfg      = cfg or IntegratorConfig()
    t_start  = sc.t_fault_clear if t_start is None else t_start
    t_final  = t_start + duration
    y        = xT.as_array()
    recorder = _Recorder(0.0, y)
    segments = list(pairwise(_breakpoints(sc, t_start, t_final)))

    for a, b in reversed(segments):
        s_a = t_final - b
        s_b = t_final - a

        if b < t_final:
            recorder.events.extend(Event(s_a, kind) for kind in _switch_events(sc, b))

        field = VectorField(sc, sc.phase_at(a), mode)
        sol   = _solve(_ReversedField(field, t_final), (s_a, s_b), y, cfg)

        recorder.extend(sol.t, sol.y)
        y = sol.y[:, -1]

    logger.debug('reverse run from (%.6g, %.6g) over %.6g s ended at (%.6g, %.6g)', xT.x1, xT.x2, duration, y[0], y[1])

    return recorder.trajectory(direction=Direction.REVERSE, clock_origin=t_final)
