import typing

__all__ = [
    'Error',
    'ModelError',
    'DegenerateMass',
    'NoEquilibrium',
    'NoConvergence',
    'IntegrationError',
    'StepFailure',
    'HardSaturationNotReversible',
    'NotHurwitz',
    'SeedTooLarge',
    'SamplerError',
    'SamplerBudgetExceeded',
    'ConfigError',
    'MissingValueError',
    'InvalidValueError',
    'BadDocument'
]

class Error(Exception):
    """Exception raised by this library."""

    pass

class ModelError(Error):
    """Raised if the reduced-order model cannot be evaluated."""

    pass

class DegenerateMass(ModelError):
    """Raised if the equivalent inertia `M_eq` vanishes."""

    def __init__(self, m_eq: float, t: float):
        super().__init__(f'equivalent inertia M_eq={m_eq:.3e} is singular at t={t:.6g} s')

        self.m_eq = m_eq
        self.t    = t

class NoEquilibrium(ModelError):
    """Raised if a phase of a scenario has no equilibrium point."""

    pass

class NoConvergence(ModelError):
    """Raised if an iterative solve fails to converge."""

    pass

class IntegrationError(Error):
    """Raised if an initial-value problem cannot be integrated."""

    pass

class StepFailure(IntegrationError):
    """Raised if the integrator step size underflows."""

    pass

class HardSaturationNotReversible(IntegrationError):
    """Raised if reverse-time integration is requested with hard PLL saturation."""

    def __init__(self):
        super().__init__('hard PLL frequency saturation breaks time reversal; use smooth saturation')

class NotHurwitz(Error):
    """Raised if a matrix has an eigenvalue outside the open left half-plane."""

    def __init__(self, eigenvalues: typing.Sequence[complex]):
        values = ', '.join(f'{complex(v):.6g}' for v in eigenvalues)

        super().__init__(f'matrix is not Hurwitz (eigenvalues: {values})')

        self.eigenvalues = tuple(eigenvalues)

class SeedTooLarge(Error):
    """Raised if no validated Lyapunov level set is found."""

    pass

class SamplerError(Error):
    """Raised if a boundary evaluation fails during adaptive sampling."""

    def __init__(self, theta: float, reason: str):
        super().__init__(f'boundary evaluation failed at theta={theta:.17g}: {reason}')

        self.theta = theta

class SamplerBudgetExceeded(UserWarning):
    """Issued if the sampler stops at `n_max` before meeting its loss goal."""

    pass

class ConfigError(Error):
    """Raised if a configuration file or override is invalid."""

    def __init__(self, message: str, path: typing.Optional[str] = None, line: typing.Optional[int] = None):
        location = ''

        if path is not None:
            location = str(path)

            if line is not None:
                location += f':{line}'

            location += ': '

        super().__init__(location + message)

        self.path = path
        self.line = line

class MissingValueError(ConfigError):
    """Raised if a configuration is missing required data."""

    pass

class InvalidValueError(ConfigError):
    """Raised if a configuration has an invalid value or format."""

    pass

class BadDocument(Error):
    """Raised if a data file written by this library fails to be read."""

    pass
