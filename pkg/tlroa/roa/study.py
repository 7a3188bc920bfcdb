from __future__ import annotations
import dataclasses
import logging
import typing
import pandas as pd
from tlroa.datatypes    import Scenario, SaturationMode, BoundaryCurve
from tlroa.lyapunov     import LyapunovSeed, build_seed
from tlroa.ode          import IntegratorConfig
from tlroa.roa.geometry import polygon_area, hausdorff_distance, is_nested
from tlroa.roa.reverse  import estimate_tlroa
from tlroa.sampling     import SamplerConfig, SampleSet, run_sampler

__all__ = [
    'Variant',
    'StudyResult',
    'sensitivity_study',
    'horizon_study',
    'compare_losses'
]

logger = logging.getLogger(__name__)

@dataclasses.dataclass(frozen=True)
class Variant:
    """One configuration of a sensitivity study."""

    label: str
    scenario: Scenario
    t_back: float = 1.0
    sat_mode: typing.Optional[SaturationMode] = None

@dataclasses.dataclass(eq=False)
class StudyResult:
    curves: typing.List[BoundaryCurve]
    table: pd.DataFrame
    seeds: typing.List[LyapunovSeed] = dataclasses.field(default_factory=list)

    @property
    def simulation_count(self) -> int:
        return int(self.table['evaluations'].sum() + self.table['seed_runs'].sum())

def sensitivity_study(variants: typing.Sequence[Variant],
                      sampler: typing.Optional[SamplerConfig] = None,
                      cfg: typing.Optional[IntegratorConfig] = None,
                      jobs: int = 1,
                      seed: typing.Optional[LyapunovSeed] = None,
                      seed_level: typing.Optional[float] = None,
                      n_check: int = 64
) -> StudyResult:
    """Estimates one TLRoA per variant and tabulates their areas.

    Each variant gets its own seed, built from `seed_level` and `n_check`, unless
    `seed` is given (only meaningful when every variant shares the post-fault
    configuration).
    """

    curves = []
    seeds  = []
    rows   = []

    for variant in variants:
        v_seed = seed or build_seed(variant.scenario, seed_level, n_check, cfg, variant.sat_mode)
        curve  = estimate_tlroa(variant.scenario, v_seed, variant.t_back, sampler, cfg, variant.sat_mode, jobs)

        curves.append(curve)
        seeds.append(v_seed)
        rows.append({
            'label':       variant.label,
            't_back':      variant.t_back,
            'area':        polygon_area(curve),
            'samples':     curve.sample_count,
            'evaluations': curve.sample_count,
            'seed_runs':   v_seed.validation_runs if seed is None else 0,
            'max_loss':    curve.max_loss,
            'warnings':    len(curve.warnings)
        })

        logger.info("variant '%s': area %.6g", variant.label, rows[-1]['area'])

    return StudyResult(curves, pd.DataFrame(rows), seeds)

def horizon_study(sc: Scenario,
                  horizons: typing.Sequence[float],
                  seed: typing.Optional[LyapunovSeed] = None,
                  sampler: typing.Optional[SamplerConfig] = None,
                  cfg: typing.Optional[IntegratorConfig] = None,
                  sat_mode: typing.Optional[SaturationMode] = None,
                  jobs: int = 1
) -> StudyResult:
    """TLRoA for increasing backward horizons with the area growth between them.

    The table's `growth` column is the relative area increase over the previous
    horizon and `nested` tells whether the previous curve lies inside this one.
    """

    horizons = sorted(horizons)
    seed     = seed or build_seed(sc, cfg=cfg, sat_mode=sat_mode)
    variants = [Variant(f't_back={t:g}', sc, t, sat_mode) for t in horizons]
    result   = sensitivity_study(variants, sampler, cfg, jobs, seed)

    areas  = result.table['area']
    growth = [float('nan')] + [(areas[i] - areas[i - 1]) / areas[i - 1] for i in range(1, len(areas))]
    nested = [True] + [is_nested(result.curves[i - 1], result.curves[i]) for i in range(1, len(areas))]

    result.table['growth'] = growth
    result.table['nested'] = nested

    # The shared seed was validated once, for the first horizon.
    result.table.loc[0, 'seed_runs'] = seed.validation_runs

    return result

def compare_losses(f: typing.Callable,
                   configs: typing.Sequence[SamplerConfig],
                   reference: SampleSet,
                   jobs: int = 1
) -> typing.Tuple[pd.DataFrame, typing.List[SampleSet]]:
    """Runs the sampler once per configuration and scores each boundary.

    The score is the Hausdorff distance to `reference` (typically a
    `dense_reference`) in the normalized output space.
    """

    rows    = []
    samples = []

    for cfg in configs:
        result = run_sampler(f, cfg, jobs)

        samples.append(result)
        rows.append({
            'loss_kind':   cfg.loss_kind.label,
            'loss_goal':   cfg.loss_goal,
            'samples':     len(result),
            'evaluations': result.evaluations,
            'reason':      result.reason.label,
            'max_loss':    result.max_loss,
            'wall_time':   result.wall_time,
            'error':       hausdorff_distance(result.points, reference.points)
        })

    return pd.DataFrame(rows), samples
