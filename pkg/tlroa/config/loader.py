from __future__ import annotations
import configparser
import dataclasses
import io
import logging
import re
import typing
from tlroa                       import utils
from tlroa.config.section        import ConfigSection
from tlroa.csvio.header          import format_value
from tlroa.datatypes             import SystemParams, SaturationMode, Scenario, GridSpec
from tlroa.exceptions            import ConfigError, InvalidValueError
from tlroa.ode                   import IntegratorConfig
from tlroa.sampling              import SamplerConfig, LossKind

__all__ = [
    'SECTIONS',
    'RunConfig',
    'parse_override',
    'read_config',
    'load_config',
    'write_config',
    'config_text'
]

logger = logging.getLogger(__name__)

SECTIONS = ('system', 'scenario', 'integrator', 'seed', 'sampler', 'tlroa', 'grid', 'assess')

_section_re = re.compile(r'^\s*\[([^\]]+)\]')
_key_re     = re.compile(r'^([^\s=:#;][^=:]*?)\s*[=:]')

@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, as read from a configuration file."""

    scenario: Scenario
    integrator: IntegratorConfig = IntegratorConfig()
    sampler: SamplerConfig = SamplerConfig()
    grid: GridSpec = GridSpec()
    seed_level: typing.Optional[float] = None
    seed_checks: int = 64
    t_back: float = 1.0
    k_max: int = 2
    t_clear: typing.Optional[float] = None
    sweep: typing.Optional[typing.Tuple[float, float, float]] = None
    """Clearing-time sweep as `(start, stop, step)`, in seconds."""

    @classmethod
    def default(cls) -> RunConfig:
        return cls(Scenario.default())

    @property
    def sat_mode(self) -> SaturationMode:
        return self.scenario.params.sat_mode

    def digest(self) -> str:
        """Hash of the canonical text of this configuration."""

        return utils.digest(config_text(self))

#================================================================================
# Parsing
#================================================================================
def parse_override(text: str) -> typing.Tuple[str, str, str]:
    """Splits `section.key=value` into its parts.

    >>> parse_override('sampler.loss_goal=0.05')
    ('sampler', 'loss_goal', '0.05')
    """

    name, sep, value = text.partition('=')
    section, dot, key = name.strip().partition('.')

    if not sep or not dot or not section or not key:
        raise ConfigError(f"invalid override '{text}' (expected section.key=value)", '--set')

    if section not in SECTIONS:
        raise ConfigError(f"unknown section '{section}' in override '{text}'", '--set')

    return section, key.strip(), value.strip()

def _key_lines(text: str) -> typing.Dict[typing.Tuple[str, str], int]:
    lines   = {}
    section = None

    for number, line in enumerate(text.splitlines(), start=1):
        match = _section_re.match(line)

        if match is not None:
            section = match.group(1).strip()
            lines[(section, '')] = number
            continue

        match = _key_re.match(line)

        if match is not None and section is not None:
            lines[(section, match.group(1).strip())] = number

    return lines

def read_config(file: typing.Optional[typing.TextIO],
                source: typing.Optional[str] = None,
                overrides: typing.Sequence[str] = ()
) -> typing.Dict[str, ConfigSection]:
    """Reads the sections of a configuration file and applies `--set` overrides.

    `file = None` reads no file, so that only defaults and overrides apply.
    """

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=('#', ';'))
    parser.optionxform = str

    text = '' if file is None else file.read()

    try:
        parser.read_string(text, source or '<config>')
    except configparser.DuplicateOptionError as exc:
        raise InvalidValueError(f"duplicate key '{exc.option}' in section [{exc.section}]", source, exc.lineno) from None
    except configparser.DuplicateSectionError as exc:
        raise InvalidValueError(f'duplicate section [{exc.section}]', source, exc.lineno) from None
    except configparser.MissingSectionHeaderError as exc:
        raise InvalidValueError('key outside of any section', source, exc.lineno) from None
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise InvalidValueError('malformed line', source, line) from None

    for name in parser.sections():
        if name not in SECTIONS:
            raise InvalidValueError(f"unknown section [{name}]", source, _key_lines(text).get((name, '')))

    lines    = _key_lines(text)
    sections = {}

    for name in SECTIONS:
        values = dict(parser[name]) if parser.has_section(name) else {}
        keys   = {key: lines[(name, key)] for key in values if (name, key) in lines}

        sections[name] = ConfigSection(name, values, source, lines.get((name, '')), keys)

    for override in overrides:
        section, key, value = parse_override(override)

        sections[section].values[key]  = value
        sections[section].sources[key] = '--set'

        logger.debug('override %s.%s = %s', section, key, value)

    return sections

#================================================================================
# Building
#================================================================================
_SYSTEM_KEYS = (
    'k_p', 'k_i', 'SCR', 'XR', 'r_Lg_pu', 'L_g_pu', 'V_g_prefault_pu', 'V_g_fault_pu', 'V_g_postfault_pu',
    'f_g_Hz', 'omega_g_rad_per_s', 'f0_Hz', 'omega0_rad_per_s', 'S_b_VA', 'S_b_MVA', 'V_b_V',
    'sat_limit_rad_per_s', 'sat_limit_Hz', 'sat_mode', 'i_max_pu'
)

_SCENARIO_KEYS = (
    'i_d_prefault_pu', 'i_q_prefault_pu', 'i_d_fault_pu', 'i_q_fault_pu', 'i_d_target_pu', 'i_q_postfault_pu',
    'ramp_rate_kA_per_s', 'ramp_rate_pu_per_s', 't_fault_start_s', 't_fault_clear_s'
)

# Keys that may have set each refused field, most specific first.
_SYSTEM_FIELDS = {
    'r_Lg':          ('r_Lg_pu',),
    'L_g':           ('L_g_pu',),
    'V_g_prefault':  ('V_g_prefault_pu',),
    'V_g_fault':     ('V_g_fault_pu',),
    'V_g_postfault': ('V_g_postfault_pu',),
    'omega_g':       ('omega_g_rad_per_s', 'f_g_Hz'),
    'omega0':        ('omega0_rad_per_s', 'f0_Hz'),
    'S_b':           ('S_b_VA', 'S_b_MVA'),
    'V_b':           ('V_b_V',),
    'sat_limit':     ('sat_limit_rad_per_s', 'sat_limit_Hz'),
    'i_max':         ('i_max_pu',)
}

_SCENARIO_FIELDS = {
    'ramp_rate':          ('ramp_rate_pu_per_s', 'ramp_rate_kA_per_s'),
    't_fault_clear':      ('t_fault_clear_s', 't_fault_start_s'),
    'prefault_current':   ('i_d_prefault_pu', 'i_q_prefault_pu'),
    'fault_current':      ('i_d_fault_pu', 'i_q_fault_pu'),
    'ramp_start_current': ('i_d_fault_pu', 'i_q_postfault_pu', 'i_q_prefault_pu'),
    'postfault_current':  ('i_d_target_pu', 'i_q_postfault_pu', 'i_q_prefault_pu')
}

_INTEGRATOR_FIELDS = {
    'max_step':          ('max_step_s',),
    'divergence_radius': ('divergence_radius_rad',),
    'max_time':          ('max_time_s',)
}

def _positive_int(value: str) -> int:
    number = int(value)

    if number < 1:
        raise ValueError('must be at least 1')

    return number

def _non_negative_int(value: str) -> int:
    number = int(value)

    if number < 0:
        raise ValueError('must not be negative')

    return number

def _in_units(section: ConfigSection, keys: typing.Dict[str, typing.Callable[[float], float]], default: float) -> float:
    """Value of whichever unit-suffixed key is set, converted to the model's unit."""

    key = section.exactly_one(*keys)

    if key is None:
        return default

    return keys[key](section.required(key, utils.parse_float))

def _system_params(section: ConfigSection) -> SystemParams:
    section.unknown_keys(_SYSTEM_KEYS)

    base     = SystemParams.default()
    by_ratio = 'SCR' in section or 'XR' in section
    by_value = 'r_Lg_pu' in section or 'L_g_pu' in section

    if by_ratio and by_value:
        raise section.invalid('SCR' if 'SCR' in section else 'XR', "grid strength keys 'SCR'/'XR' exclude 'r_Lg_pu'/'L_g_pu'")

    omega_g = _in_units(section, {'omega_g_rad_per_s': float, 'f_g_Hz': utils.hz_to_rad_per_s}, base.omega_g)
    others  = dict(
        k_p           = section.optional('k_p', utils.parse_float, base.k_p),
        k_i           = section.optional('k_i', utils.parse_float, base.k_i),
        V_g_prefault  = section.optional('V_g_prefault_pu', utils.parse_float, base.V_g_prefault),
        V_g_fault     = section.optional('V_g_fault_pu', utils.parse_float, base.V_g_fault),
        V_g_postfault = section.optional('V_g_postfault_pu', utils.parse_float, base.V_g_postfault),
        omega_g       = omega_g,
        omega0        = _in_units(section, {'omega0_rad_per_s': float, 'f0_Hz': utils.hz_to_rad_per_s}, omega_g),
        S_b           = _in_units(section, {'S_b_VA': float, 'S_b_MVA': lambda s: s * 1e6}, base.S_b),
        V_b           = section.optional('V_b_V', utils.parse_float, base.V_b),
        sat_limit     = _in_units(section, {'sat_limit_rad_per_s': float, 'sat_limit_Hz': utils.hz_to_rad_per_s}, base.sat_limit),
        sat_mode      = section.optional('sat_mode', SaturationMode.from_string, base.sat_mode),
        i_max         = section.optional('i_max_pu', utils.parse_float, base.i_max)
    )

    try:
        if by_value:
            return SystemParams(
                r_Lg = section.required('r_Lg_pu', utils.parse_float),
                L_g  = section.required('L_g_pu', utils.parse_float),
                **others
            )

        if by_ratio:
            return SystemParams.from_grid_strength(
                section.optional('SCR', utils.parse_float, 3.3),
                section.optional('XR', utils.parse_float, 18.6),
                **others
            )

        return SystemParams(r_Lg=base.r_Lg, L_g=base.L_g, **others)
    except ValueError as exc:
        raise section.rejected(exc, _SYSTEM_FIELDS) from None

def _scenario(section: ConfigSection, params: SystemParams) -> Scenario:
    section.unknown_keys(_SCENARIO_KEYS)

    base = Scenario.default(params=params)
    ramp = _in_units(section, {'ramp_rate_pu_per_s': float, 'ramp_rate_kA_per_s': params.kA_per_s_to_pu}, base.ramp_rate)

    if not ramp > 0:
        raise section.invalid(section.exactly_one('ramp_rate_pu_per_s', 'ramp_rate_kA_per_s'), 'ramp rate must be greater than zero (inf for a step)')

    try:
        return Scenario(
            params        = params,
            i_d_prefault  = section.optional('i_d_prefault_pu', utils.parse_float, base.i_d_prefault),
            i_q_prefault  = section.optional('i_q_prefault_pu', utils.parse_float, base.i_q_prefault),
            i_d_fault     = section.optional('i_d_fault_pu', utils.parse_float, base.i_d_fault),
            i_q_fault     = section.optional('i_q_fault_pu', utils.parse_float, base.i_q_fault),
            i_d_target    = section.optional('i_d_target_pu', utils.parse_float, base.i_d_target),
            i_q_postfault = section.optional('i_q_postfault_pu', utils.parse_float, None),
            ramp_rate     = ramp,
            t_fault_start = section.optional('t_fault_start_s', utils.parse_float, base.t_fault_start),
            t_fault_clear = section.optional('t_fault_clear_s', utils.parse_float, base.t_fault_clear)
        )
    except ValueError as exc:
        raise section.rejected(exc, _SCENARIO_FIELDS) from None

def _integrator(section: ConfigSection) -> IntegratorConfig:
    keys = ('rel_tol', 'abs_tol', 'max_step_s', 'divergence_radius_rad', 'max_time_s')
    base = IntegratorConfig()

    section.unknown_keys(keys)

    try:
        return IntegratorConfig(
            rel_tol           = section.optional('rel_tol', utils.parse_float, base.rel_tol),
            abs_tol           = section.optional('abs_tol', utils.parse_float, base.abs_tol),
            max_step          = section.optional('max_step_s', utils.parse_float, base.max_step),
            divergence_radius = section.optional('divergence_radius_rad', utils.parse_float, base.divergence_radius),
            max_time          = section.optional('max_time_s', utils.parse_float, base.max_time)
        )
    except ValueError as exc:
        raise section.rejected(exc, _INTEGRATOR_FIELDS) from None

def _sampler(section: ConfigSection) -> SamplerConfig:
    base = SamplerConfig()

    section.unknown_keys(('loss_kind', 'loss_goal', 'n_min', 'n_max', 'batch_size'))

    try:
        return SamplerConfig(
            loss_kind  = section.optional('loss_kind', LossKind.from_string, base.loss_kind),
            loss_goal  = section.optional('loss_goal', utils.parse_float, base.loss_goal),
            n_min      = section.optional('n_min', int, base.n_min),
            n_max      = section.optional('n_max', int, base.n_max),
            batch_size = section.optional('batch_size', _positive_int, base.batch_size)
        )
    except ValueError as exc:
        raise section.rejected(exc) from None

def _grid(section: ConfigSection) -> GridSpec:
    keys = ('delta_min_rad', 'delta_max_rad', 'delta_half_width_rad', 'omega_min_rad_per_s', 'omega_max_rad_per_s', 'n_delta', 'n_omega')
    base = GridSpec()

    section.unknown_keys(keys)

    delta_range = None

    if 'delta_min_rad' in section or 'delta_max_rad' in section:
        delta_range = (section.required('delta_min_rad', utils.parse_float), section.required('delta_max_rad', utils.parse_float))

        if 'delta_half_width_rad' in section:
            raise section.invalid('delta_half_width_rad', "excludes 'delta_min_rad'/'delta_max_rad'")

    try:
        return GridSpec(
            delta_range      = delta_range,
            omega_range      = (
                section.optional('omega_min_rad_per_s', utils.parse_float, base.omega_range[0]),
                section.optional('omega_max_rad_per_s', utils.parse_float, base.omega_range[1])
            ),
            n_delta          = section.optional('n_delta', _positive_int, base.n_delta),
            n_omega          = section.optional('n_omega', _positive_int, base.n_omega),
            delta_half_width = section.optional('delta_half_width_rad', utils.parse_float, base.delta_half_width)
        )
    except ValueError as exc:
        raise section.rejected(exc) from None

def _sweep(section: ConfigSection) -> typing.Optional[typing.Tuple[float, float, float]]:
    keys = ('sweep_start_s', 'sweep_stop_s', 'sweep_step_s')

    if not any(key in section for key in keys):
        return None

    start, stop, step = (section.required(key, utils.parse_float) for key in keys)

    if not step > 0:
        raise section.invalid('sweep_step_s', 'must be greater than zero')

    if stop < start:
        raise section.invalid('sweep_stop_s', f'must not precede sweep_start_s ({start:g})')

    return (start, stop, step)

def load_config(sections: typing.Mapping[str, ConfigSection]) -> RunConfig:
    """Validates the sections read by `read_config` into a `RunConfig`."""

    params   = _system_params(sections['system'])
    scenario = _scenario(sections['scenario'], params)

    seed = sections['seed']
    seed.unknown_keys(('level', 'n_check'))

    tlroa = sections['tlroa']
    tlroa.unknown_keys(('t_back_s',))

    assess = sections['assess']
    assess.unknown_keys(('k_max', 't_clear_s', 'sweep_start_s', 'sweep_stop_s', 'sweep_step_s'))

    level = seed.optional('level', utils.parse_float, None)

    if level is not None and not level > 0:
        raise seed.invalid('level', 'must be greater than zero')

    t_back = tlroa.optional('t_back_s', utils.parse_float, 1.0)

    if not t_back > 0:
        raise tlroa.invalid('t_back_s', 'must be greater than zero')

    return RunConfig(
        scenario    = scenario,
        integrator  = _integrator(sections['integrator']),
        sampler     = _sampler(sections['sampler']),
        grid        = _grid(sections['grid']),
        seed_level  = level,
        seed_checks = seed.optional('n_check', _positive_int, 64),
        t_back      = t_back,
        k_max       = assess.optional('k_max', _non_negative_int, 2),
        t_clear     = assess.optional('t_clear_s', utils.parse_float, None),
        sweep       = _sweep(assess)
    )

#================================================================================
# Writing
#================================================================================
def _config_sections(config: RunConfig) -> typing.Dict[str, typing.Dict[str, typing.Any]]:
    sc = config.scenario
    p  = sc.params

    sections = {
        'system': {
            'k_p':                 p.k_p,
            'k_i':                 p.k_i,
            'r_Lg_pu':             p.r_Lg,
            'L_g_pu':              p.L_g,
            'V_g_prefault_pu':     p.V_g_prefault,
            'V_g_fault_pu':        p.V_g_fault,
            'V_g_postfault_pu':    p.V_g_postfault,
            'omega_g_rad_per_s':   p.omega_g,
            'omega0_rad_per_s':    p.omega0,
            'S_b_VA':              p.S_b,
            'V_b_V':               p.V_b,
            'sat_limit_rad_per_s': p.sat_limit,
            'sat_mode':            p.sat_mode.name.lower(),
            'i_max_pu':            p.i_max
        },
        'scenario': {
            'i_d_prefault_pu':    sc.i_d_prefault,
            'i_q_prefault_pu':    sc.i_q_prefault,
            'i_d_fault_pu':       sc.i_d_fault,
            'i_q_fault_pu':       sc.i_q_fault,
            'i_d_target_pu':      sc.i_d_target,
            'i_q_postfault_pu':   sc.i_q_postfault,
            'ramp_rate_pu_per_s': sc.ramp_rate,
            't_fault_start_s':    sc.t_fault_start,
            't_fault_clear_s':    sc.t_fault_clear
        },
        'integrator': {
            'rel_tol':               config.integrator.rel_tol,
            'abs_tol':               config.integrator.abs_tol,
            'max_step_s':            config.integrator.max_step,
            'divergence_radius_rad': config.integrator.divergence_radius,
            'max_time_s':            config.integrator.max_time
        },
        'seed': {
            'level':   config.seed_level,
            'n_check': config.seed_checks
        },
        'sampler': {
            'loss_kind':  config.sampler.loss_kind.name.lower(),
            'loss_goal':  config.sampler.loss_goal,
            'n_min':      config.sampler.n_min,
            'n_max':      config.sampler.n_max,
            'batch_size': config.sampler.batch_size
        },
        'tlroa': {
            't_back_s': config.t_back
        },
        'grid': {
            'omega_min_rad_per_s': config.grid.omega_range[0],
            'omega_max_rad_per_s': config.grid.omega_range[1],
            'n_delta':             config.grid.n_delta,
            'n_omega':             config.grid.n_omega
        },
        'assess': {
            'k_max':     config.k_max,
            't_clear_s': config.t_clear
        }
    }

    if config.grid.delta_range is None:
        sections['grid']['delta_half_width_rad'] = config.grid.delta_half_width
    else:
        sections['grid']['delta_min_rad'] = config.grid.delta_range[0]
        sections['grid']['delta_max_rad'] = config.grid.delta_range[1]

    if config.sweep is not None:
        for key, value in zip(('sweep_start_s', 'sweep_stop_s', 'sweep_step_s'), config.sweep):
            sections['assess'][key] = value

    return sections

def write_config(file: typing.TextIO, config: RunConfig) -> None:
    """Writes a configuration file that `read_config`/`load_config` read back to an equal `RunConfig`."""

    first = True

    for name, values in _config_sections(config).items():
        if not first:
            file.write('\n')

        first = False
        file.write(f'[{name}]\n')

        for key, value in values.items():
            if value is None:
                continue

            file.write(f'{key} = {format_value(value)}\n')

def config_text(config: RunConfig) -> str:
    buffer = io.StringIO()
    write_config(buffer, config)

    return buffer.getvalue()
