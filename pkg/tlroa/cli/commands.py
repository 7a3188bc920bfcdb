import dataclasses
import logging
import typing
import pandas as pd
from tlroa.assessment   import assess, clearing_windows, fault_trajectory
from tlroa.cli.manifest import OutputDir
from tlroa.config       import RunConfig
from tlroa.csvio        import (
    write_boundary_csv,
    read_boundary_csv,
    write_grid_csv,
    write_samples_csv,
    write_table_csv,
    write_trajectory_csv
)
from tlroa.datatypes    import SaturationMode, BoundaryCurve, VerdictKind
from tlroa.exceptions   import ConfigError, HardSaturationNotReversible
from tlroa.jsonio       import boundary_document, assessment_document, sweep_document, dump_document
from tlroa.lyapunov     import LyapunovSeed, build_seed
from tlroa.plotting     import grid_figure, boundary_figure, save_svg
from tlroa.roa          import forward_roa, sample_boundary, curve_from_samples, Variant, sensitivity_study, horizon_study

__all__ = [
    'SWEEP_AXES',
    'cmd_forward_roa',
    'cmd_tlroa',
    'cmd_assess',
    'cmd_sweep',
    'parse_sweep',
    'parse_values'
]

logger = logging.getLogger(__name__)

SWEEP_AXES = ('t_back', 'ramp_rate', 'i_d_fault', 'SCR', 'sat_mode')

def _seed(config: RunConfig) -> LyapunovSeed:
    return build_seed(config.scenario, config.seed_level, config.seed_checks, config.integrator)

def _require_reversible(mode: SaturationMode) -> None:
    if mode == SaturationMode.HARD:
        raise HardSaturationNotReversible()

def _write_svg(out: OutputDir, name: str, fig, config_hash: str, deterministic: bool) -> None:
    with out.open(name, 'wb') as file:
        save_svg(fig, file, config_hash, deterministic)

def cmd_forward_roa(config: RunConfig, out: OutputDir, jobs: int = 1, deterministic: bool = False) -> int:
    """Forward-simulated region of attraction on the configured grid.

    Writes `grid.csv` and `grid.svg`; returns the number of integrator runs.
    """

    config_hash = out.manifest.config_hash
    seed        = _seed(config)
    grid        = forward_roa(config.scenario, seed, config.grid, config.integrator, jobs=jobs)

    with out.open('grid.csv') as file:
        write_grid_csv(file, grid, config_hash)

    _write_svg(out, 'grid.svg', grid_figure(grid, seed=seed), config_hash, deterministic)

    counts = grid.counts()

    print(f'{grid.simulation_count} cells:',
          ', '.join(f'{counts[kind]} {kind.name.replace("_", " ").lower()}' for kind in VerdictKind))

    return grid.simulation_count + seed.validation_runs

def cmd_tlroa(config: RunConfig, out: OutputDir, jobs: int = 1, deterministic: bool = False) -> int:
    """Time-limited region of attraction by reverse-time integration from the seed.

    Writes `boundary.csv`, `boundary.json`, `samples.csv` and `tlroa.svg`.
    """

    _require_reversible(config.sat_mode)

    config_hash = out.manifest.config_hash
    seed        = _seed(config)
    samples     = sample_boundary(config.scenario, seed, config.t_back, config.sampler, config.integrator, jobs=jobs)
    curve       = curve_from_samples(samples, config.scenario, config.t_back)

    with out.open('boundary.csv') as file:
        write_boundary_csv(file, curve, config_hash)

    with out.open('boundary.json') as file:
        dump_document(file, boundary_document(curve, config_hash, seed))

    with out.open('samples.csv') as file:
        write_samples_csv(file, samples, config_hash)

    _write_svg(out, 'tlroa.svg', boundary_figure([curve], seed=seed), config_hash, deterministic)

    print(f'{len(samples)} samples ({samples.reason.label}), max loss {samples.max_loss:.4g}')

    return samples.evaluations + seed.validation_runs

def parse_sweep(text: str) -> typing.Tuple[float, float, float]:
    """Parses `START:STOP:DT` (seconds)."""

    parts = text.split(':')

    if len(parts) != 3:
        raise ConfigError(f"invalid sweep '{text}' (expected START:STOP:DT)", '--sweep')

    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"invalid sweep '{text}' (expected numbers)", '--sweep') from None

    if not step > 0 or stop < start:
        raise ConfigError(f"invalid sweep '{text}' (need DT > 0 and STOP >= START)", '--sweep')

    return start, stop, step

def _home_curve(config: RunConfig,
                boundary: typing.Optional[str],
                seed: LyapunovSeed,
                jobs: int
) -> typing.Tuple[BoundaryCurve, int]:
    if boundary is not None:
        try:
            with open(boundary, newline='') as file:
                return read_boundary_csv(file, config.scenario.digest(), boundary), 0
        except OSError as exc:
            raise ConfigError(f'cannot read boundary: {exc.strerror}', boundary) from None

    _require_reversible(config.sat_mode)

    samples = sample_boundary(config.scenario, seed, config.t_back, config.sampler, config.integrator, jobs=jobs)

    return curve_from_samples(samples, config.scenario, config.t_back), samples.evaluations

def cmd_assess(config: RunConfig,
               out: OutputDir,
               jobs: int = 1,
               deterministic: bool = False,
               boundary: typing.Optional[str] = None
) -> int:
    """Clearing-time verdicts by membership of the post-fault state in the TLRoA.

    With a sweep, writes `sweep.json` and `sweep.csv`; otherwise `assessment.json`
    and `fault_trajectory.csv`. Both write `assess.svg`.
    """

    config_hash = out.manifest.config_hash
    sc          = config.scenario
    seed        = _seed(config)
    home, runs  = _home_curve(config, boundary, seed, jobs)
    runs       += seed.validation_runs

    if config.sweep is not None:
        start, stop, step = config.sweep
        sweep             = clearing_windows(sc, (start, stop), step, home, config.k_max, seed, config.integrator, jobs=jobs)

        with out.open('sweep.json') as file:
            dump_document(file, sweep_document(sweep, config_hash))

        table = pd.DataFrame([
            {
                'clearing_time': p.clearing_time,
                'delta':         p.post_fault_state.x1 if p.post_fault_state is not None else None,
                'ddelta':        p.post_fault_state.x2 if p.post_fault_state is not None else None,
                'verdict':       str(p.verdict),
                'simulated':     str(p.simulated),
                'note':          p.note
            }
            for p in sweep.points
        ])

        with out.open('sweep.csv') as file:
            write_table_csv(file, table, 'sweep', config_hash, {'clearing_time': 's', 'delta': 'rad', 'ddelta': 'rad/s'})

        _write_svg(out, 'assess.svg', boundary_figure([home], seed=seed, neighbors=config.k_max), config_hash, deterministic)

        for window in sweep.windows:
            print(window)

        if sweep.violations:
            print(f'{len(sweep.violations)} point(s) judged stable but unstable in simulation')

        return runs + sweep.simulation_count

    t_clear    = sc.t_fault_clear if config.t_clear is None else config.t_clear
    trajectory = fault_trajectory(sc, t_clear, config.integrator)
    result     = assess(sc, t_clear, home, config.k_max, config.integrator, seed=seed, trajectory=trajectory)

    with out.open('assessment.json') as file:
        dump_document(file, assessment_document(result, config_hash))

    with out.open('fault_trajectory.csv') as file:
        write_trajectory_csv(file, trajectory, config_hash)

    fig = boundary_figure([home], seed=seed, trajectory=trajectory, neighbors=config.k_max)
    _write_svg(out, 'assess.svg', fig, config_hash, deterministic)

    print(f'clearing at {t_clear:g} s: {result.verdict} (simulation: {result.simulated})')

    if result.is_violation:
        print('judged stable but unstable in simulation')

    return runs + int(t_clear > sc.t_fault_start) + 1

def parse_values(axis: str, text: str) -> typing.List[typing.Any]:
    """Comma-separated values of a sweep axis; `sat_mode` takes mode names."""

    items = [item.strip() for item in text.split(',') if item.strip()]

    if not items:
        raise ConfigError('no sweep values given', '--values')

    try:
        if axis == 'sat_mode':
            return [SaturationMode.from_string(item) for item in items]

        return [float(item) for item in items]
    except ValueError as exc:
        raise ConfigError(f'invalid sweep values: {exc}', '--values') from None

def _variant(config: RunConfig, axis: str, value: typing.Any) -> Variant:
    sc = config.scenario

    try:
        if axis == 'ramp_rate':
            return Variant(f'ramp_rate={value:g} kA/s', sc.with_ramp_rate_kA_per_s(value), config.t_back)
        elif axis == 'i_d_fault':
            return Variant(f'i_d_fault={value:g} pu', dataclasses.replace(sc, i_d_fault=value), config.t_back)
        elif axis == 'SCR':
            return Variant(f'SCR={value:g}', dataclasses.replace(sc, params=sc.params.with_grid_strength(value)), config.t_back)
        else:
            _require_reversible(value)

            return Variant(f'sat_mode={value.name.lower()}', sc.with_params(sat_mode=value), config.t_back)
    except ValueError as exc:
        raise ConfigError(f'invalid {axis} value {value}: {exc}', '--values') from None

def cmd_sweep(config: RunConfig,
              out: OutputDir,
              axis: str,
              values: typing.Sequence[typing.Any],
              jobs: int = 1,
              deterministic: bool = False
) -> int:
    """One TLRoA per value of `axis` and a table of their areas.

    Writes `boundary_<i>.csv` per value, `sweep_<axis>.csv` and `sweep.svg`.
    """

    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis '{axis}' (expected one of: {', '.join(SWEEP_AXES)})", '--axis')

    config_hash = out.manifest.config_hash

    if axis == 't_back':
        _require_reversible(config.sat_mode)

        if any(not v > 0 for v in values):
            raise ConfigError('backward horizons must be greater than zero', '--values')

        seed   = _seed(config)
        result = horizon_study(config.scenario, values, seed, config.sampler, config.integrator, jobs=jobs)
    else:
        variants = [_variant(config, axis, value) for value in values]

        if axis != 'sat_mode':
            _require_reversible(config.sat_mode)

        result = sensitivity_study(variants, config.sampler, config.integrator, jobs,
                                   seed_level=config.seed_level, n_check=config.seed_checks)

    for index, curve in enumerate(result.curves):
        with out.open(f'boundary_{index}.csv') as file:
            write_boundary_csv(file, curve, config_hash)

    with out.open(f'sweep_{axis}.csv') as file:
        write_table_csv(file, result.table, f'sweep {axis}', config_hash, {'t_back': 's', 'area': 'rad^2/s'})

    fig = boundary_figure(result.curves, list(result.table['label']), title=f'TLRoA sensitivity to {axis}')
    _write_svg(out, 'sweep.svg', fig, config_hash, deterministic)

    print(result.table.to_string(index=False))

    return result.simulation_count
