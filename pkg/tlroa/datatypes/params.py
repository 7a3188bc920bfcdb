from __future__ import annotations
import dataclasses
import math
from enum  import IntEnum, auto
from tlroa import utils

__all__ = [
    'SaturationMode',
    'InvalidParameter',
    'SystemParams'
]

class SaturationMode(IntEnum):
    NONE   = auto() # no PLL frequency limit
    HARD   = auto() # clamp at +-sat_limit
    SMOOTH = auto() # sat_limit * tanh(x2 / sat_limit)

    @classmethod
    def from_string(cls, value: str) -> SaturationMode:
        try:
            return cls[value.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown saturation mode '{value}' (expected one of: none, hard, smooth)") from None

class InvalidParameter(ValueError):
    def __init__(self, cls, field: str, value, err_desc: str):
        super().__init__(f"invalid value '{value}' for field '{field}' of {cls.__name__}: {err_desc}")

        self.field = field

@dataclasses.dataclass(frozen=True)
class SystemParams:
    """Physical and control constants of the reduced-order wind turbine model.

    Grid impedance, voltages and currents are per-unit on the converter rating; the
    model itself is evaluated in SI units, converted through the bases below:

    - voltage base `V_peak`: line-to-neutral peak of the line-to-line RMS `V_b`;
    - current base `I_b`: RMS phase current at rated power, `S_b / (sqrt(3) * V_b)`;
      ramp rates in kA/s are converted with it, model currents use its peak `I_peak`;
    - impedance base `Z_b = V_b**2 / S_b`.

    PLL gains are used as given (they act on volts and amperes).

    >>> p = SystemParams.from_grid_strength(scr=3.3, xr=18.6)
    >>> round(p.SCR, 12), round(p.XR, 12)
    (3.3, 18.6)
    """

    k_p: float
    k_i: float
    r_Lg: float
    L_g: float
    V_g_prefault: float = 1.0
    V_g_fault: float = 0.0
    V_g_postfault: float = 1.0
    omega_g: float = 2 * math.pi * 50
    omega0: float = 2 * math.pi * 50
    S_b: float = 12e6
    V_b: float = 690.0
    sat_limit: float = 2 * math.pi * 5
    sat_mode: SaturationMode = SaturationMode.NONE
    i_max: float = 1.1

    def __post_init__(self):
        positive = ('k_p', 'k_i', 'L_g', 'omega_g', 'omega0', 'S_b', 'V_b', 'sat_limit', 'i_max')
        non_negative = ('r_Lg', 'V_g_prefault', 'V_g_fault', 'V_g_postfault')

        for name in positive:
            value = getattr(self, name)

            if not (math.isfinite(value) and value > 0):
                raise InvalidParameter(self.__class__, name, value, 'must be finite and greater than zero')

        for name in non_negative:
            value = getattr(self, name)

            if not (math.isfinite(value) and value >= 0):
                raise InvalidParameter(self.__class__, name, value, 'must be finite and non-negative')

        if not isinstance(self.sat_mode, SaturationMode):
            object.__setattr__(self, 'sat_mode', SaturationMode(self.sat_mode))

    @classmethod
    def from_grid_strength(cls, scr: float, xr: float, **kwargs) -> SystemParams:
        """Builds parameters whose grid impedance has |Z| = 1/SCR pu and X/R = `xr`."""

        if not (scr > 0 and math.isfinite(scr)):
            raise InvalidParameter(cls, 'SCR', scr, 'must be finite and greater than zero')

        if not xr > 0:
            raise InvalidParameter(cls, 'XR', xr, 'must be greater than zero')

        z = 1.0 / scr

        if math.isinf(xr):
            r, x = 0.0, z
        else:
            r = z / math.sqrt(1.0 + xr * xr)
            x = r * xr

        kwargs.setdefault('k_p', 0.025)
        kwargs.setdefault('k_i', 1.5)

        # Per-unit inductance equals per-unit reactance at the nominal frequency.
        return cls(r_Lg=r, L_g=x, **kwargs)

    @classmethod
    def default(cls) -> SystemParams:
        """Operating point of the 12 MVA, 690 V turbine used throughout the studies."""

        return cls.from_grid_strength(scr=3.3, xr=18.6)

    @property
    def SCR(self) -> float:
        return 1.0 / math.hypot(self.r_Lg, self.L_g)

    @property
    def XR(self) -> float:
        if self.r_Lg == 0:
            return math.inf

        return self.L_g / self.r_Lg

    @property
    def V_peak(self) -> float:
        return self.V_b * math.sqrt(2.0 / 3.0)

    @property
    def I_b(self) -> float:
        return self.S_b / (math.sqrt(3.0) * self.V_b)

    @property
    def I_peak(self) -> float:
        return math.sqrt(2.0) * self.I_b

    @property
    def Z_b(self) -> float:
        return self.V_b * self.V_b / self.S_b

    @property
    def grid_resistance(self) -> float:
        """Grid resistance in ohms."""

        return self.r_Lg * self.Z_b

    @property
    def grid_inductance(self) -> float:
        """Grid inductance in henries."""

        return self.L_g * self.Z_b / self.omega_g

    def volts(self, v_pu: float) -> float:
        return v_pu * self.V_peak

    def amps(self, i_pu: float) -> float:
        return i_pu * self.I_peak

    def kA_per_s_to_pu(self, rate: float) -> float:
        return utils.kA_per_s_to_pu_per_s(rate, self.I_b)

    def pu_to_kA_per_s(self, rate: float) -> float:
        return utils.pu_per_s_to_kA_per_s(rate, self.I_b)

    def with_grid_strength(self, scr: float, xr: float = None) -> SystemParams:
        xr     = self.XR if xr is None else xr
        others = {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name not in ('r_Lg', 'L_g')}

        return SystemParams.from_grid_strength(scr, xr, **others)
