import dataclasses
import math
from tlroa.datatypes.params import InvalidParameter

__all__ = [
    'IntegratorConfig'
]

@dataclasses.dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_step: float = 0.01
    """Largest step in seconds; keeps event detection from skipping short excursions."""

    divergence_radius: float = 3 * math.pi
    """How much further from the tracked equilibrium than its start a run may move before it is declared divergent, in rad."""

    max_time: float = 5.0
    """Horizon of forward stability checks, in seconds."""

    def __post_init__(self):
        for name in ('rel_tol', 'abs_tol', 'max_step', 'divergence_radius', 'max_time'):
            value = getattr(self, name)

            if not (value > 0):
                raise InvalidParameter(self.__class__, name, value, 'must be greater than zero')

    def tightened(self, factor: float = 0.5) -> 'IntegratorConfig':
        return dataclasses.replace(self, rel_tol=self.rel_tol * factor, abs_tol=self.abs_tol * factor)
