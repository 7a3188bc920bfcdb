from __future__ import annotations
import math
import typing
import numpy as np
from tlroa.datatypes import SaturationMode, Scenario, Phase, State, SwingCoefficients
from tlroa.exceptions import DegenerateMass

__all__ = [
    'MASS_EPSILON',
    'saturate_smooth',
    'VectorField',
    'coefficients',
    'rhs',
    'jacobian'
]

MASS_EPSILON = 1e-9

def saturate_smooth(x2, sat_limit: float):
    """Smooth PLL frequency limit `sat_limit * tanh(x2 / sat_limit)`.

    >>> saturate_smooth(0.0, 10.0)
    0.0
    """

    if not sat_limit > 0:
        raise ValueError(f'saturation limit must be greater than zero (got {sat_limit})')

    if np.ndim(x2) == 0:
        return sat_limit * math.tanh(float(x2) / sat_limit)

    return sat_limit * np.tanh(np.asarray(x2, dtype=float) / sat_limit)

class VectorField:
    """Right-hand side of the equivalent swing equation on one phase of a scenario.

    The per-unit configuration is converted to SI once, on construction; calling
    the object evaluates `f(t, y)` in the `scipy.integrate.solve_ivp` convention.
    Within a phase the current references are affine in time, so the equivalent
    inertia is checked for singularity at both ends of the phase.
    """

    def __init__(self, scenario: Scenario, phase: Phase, sat_mode: typing.Optional[SaturationMode] = None):
        p = scenario.params

        if sat_mode is None:
            sat_mode = p.sat_mode

        t_ref = scenario.phase_start(phase)
        t_ref = t_ref if math.isfinite(t_ref) else 0.0
        op    = scenario.operating_point(t_ref, phase)

        self.scenario  = scenario
        self.phase     = phase
        self.sat_mode  = SaturationMode(sat_mode)
        self.sat_limit = p.sat_limit
        self.k_p       = p.k_p
        self.k_i       = p.k_i
        self.r         = p.grid_resistance
        self.L         = p.grid_inductance
        self.omega_g   = p.omega_g
        self.v         = p.volts(op.v_g)
        self.i_q       = p.amps(op.i_q)
        self.t_ref     = t_ref
        self.i_d_ref   = p.amps(op.i_d)
        self.di_d_dt   = p.amps(op.di_d_dt)

        if self.di_d_dt != 0:
            i_d_end = p.amps(scenario.i_d_target)
            self.i_d_bounds = (min(self.i_d_ref, i_d_end), max(self.i_d_ref, i_d_end))
            t_end = scenario.t_ramp_end
        else:
            self.i_d_bounds = (self.i_d_ref, self.i_d_ref)
            t_end = t_ref

        m_start = 1.0 - self.k_p * self.L * self.i_d_bounds[0]
        m_end   = 1.0 - self.k_p * self.L * self.i_d_bounds[1]

        if abs(m_start) < MASS_EPSILON or m_start * m_end <= 0 or abs(m_end) < MASS_EPSILON:
            bad = m_start if abs(m_start) <= abs(m_end) else m_end
            raise DegenerateMass(bad, t_ref if bad == m_start else t_end)

    def __repr__(self) -> str:
        return f'VectorField(phase={self.phase.name}, sat_mode={self.sat_mode.name})'

    def current(self, t: float) -> float:
        """Active current reference at `t`, in amperes."""

        if self.di_d_dt == 0:
            return self.i_d_ref

        lo, hi = self.i_d_bounds

        return min(max(self.i_d_ref + self.di_d_dt * (t - self.t_ref), lo), hi)

    def saturate(self, x2: float) -> float:
        if self.sat_mode == SaturationMode.NONE:
            return x2
        elif self.sat_mode == SaturationMode.HARD:
            return min(max(x2, -self.sat_limit), self.sat_limit)
        else:
            return self.sat_limit * math.tanh(x2 / self.sat_limit)

    def saturate_derivative(self, x2: float) -> float:
        if self.sat_mode == SaturationMode.NONE:
            return 1.0
        elif self.sat_mode == SaturationMode.HARD:
            return 1.0 if abs(x2) < self.sat_limit else 0.0
        else:
            return 1.0 / math.cosh(x2 / self.sat_limit) ** 2

    def coefficients_at(self, x1: float, t: float) -> typing.Tuple[float, float, float, float]:
        """`(M_eq, T_m_eq, T_e_eq, D_eq)` at angle `x1` and time `t`."""

        i_d  = self.current(t)
        l_id = self.L * i_d

        m   = 1.0 - self.k_p * l_id
        t_m = self.k_p * self.L * self.di_d_dt * self.omega_g + self.k_i * (self.r * self.i_q + l_id * self.omega_g)
        t_e = self.k_i * self.v * math.sin(x1)
        d   = self.k_p * (self.v * math.cos(x1) - self.L * self.di_d_dt) - self.k_i * l_id

        return m, t_m, t_e, d

    def _accel(self, x1: float, x2: float, t: float) -> typing.Tuple[float, float, bool]:
        m, t_m, t_e, d = self.coefficients_at(x1, t)

        x2_eff = self.saturate(x2)
        accel  = (t_m - t_e - d * x2_eff) / m

        # The hard limiter holds the frequency at its bound while pushed outward.
        if self.sat_mode == SaturationMode.HARD and abs(x2) >= self.sat_limit and accel * x2 > 0:
            return x2_eff, 0.0, True

        return x2_eff, accel, False

    def __call__(self, t: float, y: typing.Sequence[float]) -> np.ndarray:
        x2_eff, accel, _ = self._accel(y[0], y[1], t)

        return np.array([x2_eff, accel])

    def jacobian(self, t: float, y: typing.Sequence[float]) -> np.ndarray:
        x1, x2         = y[0], y[1]
        m, _, _, d     = self.coefficients_at(x1, t)
        _, _, clamped  = self._accel(x1, x2, t)

        s       = self.saturate(x2)
        s_prime = self.saturate_derivative(x2)
        cos_x1  = math.cos(x1)
        sin_x1  = math.sin(x1)

        if clamped:
            return np.array([[0.0, s_prime], [0.0, 0.0]])

        # d/dx1 of (T_m - k_i V sin x1 - k_p V cos x1 s) / M
        df2_dx1 = (-self.k_i * self.v * cos_x1 + self.k_p * self.v * sin_x1 * s) / m
        df2_dx2 = -d * s_prime / m

        return np.array([[0.0, s_prime], [df2_dx1, df2_dx2]])

def _field(s: State, t: float, sc: Scenario, sat_mode: typing.Optional[SaturationMode]) -> VectorField:
    return VectorField(sc, sc.phase_at(t), sat_mode)

def coefficients(s: State, t: float, sc: Scenario) -> SwingCoefficients:
    m, t_m, t_e, d = _field(s, t, sc, None).coefficients_at(s.x1, t)

    return SwingCoefficients(M_eq=m, T_m_eq=t_m, T_e_eq=t_e, D_eq=d)

def rhs(t: float, s: State, sc: Scenario, sat_mode: typing.Optional[SaturationMode] = None) -> np.ndarray:
    """`(x1', x2')` at state `s` and time `t`; `sat_mode` defaults to the scenario's."""

    return _field(s, t, sc, sat_mode)(t, (s.x1, s.x2))

def jacobian(s: State, t: float, sc: Scenario, sat_mode: typing.Optional[SaturationMode] = None) -> np.ndarray:
    return _field(s, t, sc, sat_mode).jacobian(t, (s.x1, s.x2))
