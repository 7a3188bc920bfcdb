import argparse
import dataclasses
import logging
import sys
import time
import typing
import warnings
from tlroa._version     import __version__
from tlroa.cli.commands import SWEEP_AXES, cmd_forward_roa, cmd_tlroa, cmd_assess, cmd_sweep, parse_sweep, parse_values
from tlroa.cli.manifest import RunManifest, OutputDir
from tlroa.config       import RunConfig, read_config, load_config
from tlroa.exceptions   import Error, ConfigError, HardSaturationNotReversible, SamplerBudgetExceeded
from tlroa.parallel     import default_jobs

__all__ = [
    'EXIT_OK',
    'EXIT_RUNTIME',
    'EXIT_CONFIG',
    'EXIT_IRREVERSIBLE',
    'build_parser',
    'main'
]

logger = logging.getLogger(__name__)

EXIT_OK           = 0
EXIT_RUNTIME      = 1
EXIT_CONFIG       = 2
EXIT_IRREVERSIBLE = 3

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', help='configuration file (defaults apply without one)')
    common.add_argument('--set', metavar='SECTION.KEY=VALUE', action='append', default=[], dest='overrides',
                        help='override a configuration value (repeatable)')
    common.add_argument('--out', metavar='DIR', default='.', help='output directory')
    common.add_argument('--jobs', metavar='N', type=int, default=None, help='worker processes (default: CPU count)')
    common.add_argument('--deterministic', action='store_true', help='omit timestamps so outputs are byte-identical')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for debugging')

    parser = argparse.ArgumentParser(prog='tlroa', description='Transient stability of a wind turbine PLL by time-limited regions of attraction')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    commands.add_parser('forward-roa', parents=[common], help='label a grid of initial states by forward simulation')
    commands.add_parser('tlroa', parents=[common], help='estimate the time-limited region of attraction')

    assess = commands.add_parser('assess', parents=[common], help='judge fault clearing times against the TLRoA')
    when   = assess.add_mutually_exclusive_group()
    when.add_argument('--t-clear', metavar='SECONDS', type=float, help='clearing instant')
    when.add_argument('--sweep', metavar='START:STOP:DT', help='sweep of clearing instants')
    assess.add_argument('--boundary', metavar='FILE', help='boundary CSV of a previous tlroa run')

    sweep = commands.add_parser('sweep', parents=[common], help='TLRoA sensitivity to one parameter')
    sweep.add_argument('--axis', required=True, choices=SWEEP_AXES)
    sweep.add_argument('--values', required=True, metavar='V1,V2,...',
                       help='values of the axis (t_back in s, ramp_rate in kA/s, i_d_fault in pu, SCR, sat_mode names)')

    return parser

def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG

    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    # Already logged when the curve is built.
    warnings.simplefilter('ignore', SamplerBudgetExceeded)

def _load(args: argparse.Namespace) -> RunConfig:
    if args.config is None:
        sections = read_config(None, None, args.overrides)
    else:
        try:
            with open(args.config, 'r', encoding='utf-8') as file:
                sections = read_config(file, args.config, args.overrides)
        except OSError as exc:
            raise ConfigError(f'cannot read configuration: {exc.strerror}', args.config) from None

    config = load_config(sections)

    if args.command == 'assess':
        changes = {}

        if args.t_clear is not None:
            changes = {'t_clear': args.t_clear, 'sweep': None}
        elif args.sweep is not None:
            changes = {'sweep': parse_sweep(args.sweep)}

        config = dataclasses.replace(config, **changes)

    return config

def _run(args: argparse.Namespace) -> int:
    config   = _load(args)
    jobs     = default_jobs() if args.jobs is None else max(1, args.jobs)
    manifest = RunManifest(args.command, config.digest(), list(args.overrides))
    out      = OutputDir(args.out, manifest)
    started  = time.perf_counter()

    logger.info('%s: config %s, %d job(s)', args.command, manifest.config_hash, jobs)

    if args.command == 'forward-roa':
        count = cmd_forward_roa(config, out, jobs, args.deterministic)
    elif args.command == 'tlroa':
        count = cmd_tlroa(config, out, jobs, args.deterministic)
    elif args.command == 'assess':
        count = cmd_assess(config, out, jobs, args.deterministic, args.boundary)
    else:
        count = cmd_sweep(config, out, args.axis, parse_values(args.axis, args.values), jobs, args.deterministic)

    manifest.simulation_count = count
    manifest.wall_time        = None if args.deterministic else time.perf_counter() - started

    out.write_manifest()

    logger.info('%s: %d simulation(s), %d file(s) in %s', args.command, count, len(manifest.outputs), args.out)

    return EXIT_OK

def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    _configure_logging(args.verbose)

    try:
        return _run(args)
    except ConfigError as exc:
        print(f'tlroa: configuration error: {exc}', file=sys.stderr)
        return EXIT_CONFIG
    except HardSaturationNotReversible as exc:
        print(f'tlroa: {exc}', file=sys.stderr)
        return EXIT_IRREVERSIBLE
    except (Error, OSError) as exc:
        print(f'tlroa: {exc}', file=sys.stderr)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        return EXIT_RUNTIME
