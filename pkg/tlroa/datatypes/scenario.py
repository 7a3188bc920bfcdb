from __future__ import annotations
import dataclasses
import math
import typing
from enum                    import IntEnum, auto
from tlroa                   import utils
from tlroa.datatypes.params  import SystemParams, InvalidParameter

__all__ = [
    'Phase',
    'OperatingPoint',
    'Scenario',
    'max_fault_active_current'
]

class Phase(IntEnum):
    PREFAULT  = auto() # before the fault is applied
    FAULT     = auto() # fault on
    RAMP      = auto() # post-fault active current ramp
    POSTFAULT = auto() # post-fault steady state

@dataclasses.dataclass(frozen=True)
class OperatingPoint:
    """Grid voltage and current references of one instant, in per-unit."""

    v_g: float
    i_d: float
    i_q: float
    di_d_dt: float = 0.0

def max_fault_active_current(i_q: float, i_max: float = 1.1) -> float:
    """Largest active current that keeps the converter within its current limit.

    >>> round(max_fault_active_current(-1.0), 2)
    0.46
    """

    if abs(i_q) > i_max:
        raise ValueError(f'reactive current {i_q} exceeds the current limit {i_max}')

    return math.sqrt(i_max * i_max - i_q * i_q)

@dataclasses.dataclass(frozen=True)
class Scenario:
    """Piecewise schedule of current references and grid voltage.

    The schedule has four phases:

        PREFAULT   t <  t_fault_start
        FAULT      t_fault_start <= t < t_fault_clear
        RAMP       t_fault_clear <= t < t_ramp_end
        POSTFAULT  t_ramp_end <= t

    During the ramp, `i_d` moves linearly from `i_d_fault` to `i_d_target` at
    `ramp_rate` (pu/s). An infinite ramp rate is a step recovery: the ramp phase
    has zero length.
    """

    params: SystemParams
    i_d_prefault: float = 1.0
    i_q_prefault: float = 0.0
    i_d_fault: float = 0.01
    i_q_fault: float = -1.0
    i_d_target: float = 1.0
    ramp_rate: float = math.inf
    t_fault_start: float = 0.0
    t_fault_clear: float = 0.15
    i_q_postfault: typing.Optional[float] = None

    def __post_init__(self):
        if self.i_q_postfault is None:
            object.__setattr__(self, 'i_q_postfault', self.i_q_prefault)

        if not (self.ramp_rate > 0):
            raise InvalidParameter(self.__class__, 'ramp_rate', self.ramp_rate, 'must be greater than zero')

        if not (self.t_fault_clear > self.t_fault_start):
            raise InvalidParameter(self.__class__, 't_fault_clear', self.t_fault_clear, f'must be later than t_fault_start ({self.t_fault_start})')

        i_max  = self.params.i_max
        phases = (
            ('prefault',        self.i_d_prefault, self.i_q_prefault),
            ('fault',           self.i_d_fault,    self.i_q_fault),
            ('ramp_start',      self.i_d_fault,    self.i_q_postfault),
            ('postfault',       self.i_d_target,   self.i_q_postfault),
        )

        for name, i_d, i_q in phases:
            # Small slack so that exactly-at-limit settings (e.g. sqrt(I_max^2 - i_q^2)) pass.
            if math.hypot(i_d, i_q) > i_max * (1 + 1e-12):
                raise InvalidParameter(
                    self.__class__,
                    f'{name}_current',
                    (i_d, i_q),
                    f"{name.replace('_', ' ')} current magnitude {math.hypot(i_d, i_q):.6g} pu exceeds I_max={i_max} pu"
                )

    @classmethod
    def default(cls, **kwargs) -> Scenario:
        """Fault ride-through with a 28.4 kA/s recovery ramp unless overridden."""

        params = kwargs.setdefault('params', SystemParams.default())
        kwargs.setdefault('ramp_rate', params.kA_per_s_to_pu(28.4))

        return cls(**kwargs)

    @property
    def ramp_duration(self) -> float:
        if math.isinf(self.ramp_rate):
            return 0.0

        return abs(self.i_d_target - self.i_d_fault) / self.ramp_rate

    @property
    def t_ramp_end(self) -> float:
        return self.t_fault_clear + self.ramp_duration

    @property
    def ramp_slope(self) -> float:
        """Signed rate of change of `i_d` during the ramp, in pu/s."""

        if self.ramp_duration == 0:
            return 0.0

        return math.copysign(self.ramp_rate, self.i_d_target - self.i_d_fault)

    def switch_times(self) -> typing.List[float]:
        times = [self.t_fault_start, self.t_fault_clear]

        if self.ramp_duration > 0:
            times.append(self.t_ramp_end)

        return times

    def phase_start(self, phase: Phase) -> float:
        if phase == Phase.PREFAULT:
            return -math.inf
        elif phase == Phase.FAULT:
            return self.t_fault_start
        elif phase == Phase.RAMP:
            return self.t_fault_clear
        else:
            return self.t_ramp_end

    def phase_at(self, t: float) -> Phase:
        if t < self.t_fault_start:
            return Phase.PREFAULT
        elif t < self.t_fault_clear:
            return Phase.FAULT
        elif t < self.t_ramp_end:
            return Phase.RAMP
        else:
            return Phase.POSTFAULT

    def operating_point(self, t: float, phase: typing.Optional[Phase] = None) -> OperatingPoint:
        """Voltage and current references at time `t`.

        Passing `phase` evaluates that phase's schedule at `t`, which is how
        integrators evaluate segment endpoints without ambiguity.
        """

        if phase is None:
            phase = self.phase_at(t)

        p = self.params

        if phase == Phase.PREFAULT:
            return OperatingPoint(p.V_g_prefault, self.i_d_prefault, self.i_q_prefault)

        elif phase == Phase.FAULT:
            return OperatingPoint(p.V_g_fault, self.i_d_fault, self.i_q_fault)

        elif phase == Phase.RAMP and self.ramp_duration > 0:
            elapsed = min(max(t - self.t_fault_clear, 0.0), self.ramp_duration)
            i_d     = self.i_d_fault + self.ramp_slope * elapsed

            return OperatingPoint(p.V_g_postfault, i_d, self.i_q_postfault, self.ramp_slope)

        else:
            return OperatingPoint(p.V_g_postfault, self.i_d_target, self.i_q_postfault)

    def current_at(self, t: float) -> typing.Tuple[float, float]:
        op = self.operating_point(t)

        return op.i_d, op.i_q

    @property
    def ramp_rate_kA_per_s(self) -> float:
        return self.params.pu_to_kA_per_s(self.ramp_rate)

    def with_clearing_time(self, t_clear: float) -> Scenario:
        return dataclasses.replace(self, t_fault_clear=t_clear)

    def with_ramp_rate_kA_per_s(self, rate: float) -> Scenario:
        return dataclasses.replace(self, ramp_rate=self.params.kA_per_s_to_pu(rate))

    def with_params(self, **changes) -> Scenario:
        return dataclasses.replace(self, params=dataclasses.replace(self.params, **changes))

    def digest(self) -> str:
        """Stable hash of every field, used to tie output files to their scenario."""

        fields = [f'{f.name}={getattr(self.params, f.name)!r}' for f in dataclasses.fields(self.params)]
        fields += [f'{f.name}={getattr(self, f.name)!r}' for f in dataclasses.fields(self) if f.name != 'params']

        return utils.digest(';'.join(fields))
