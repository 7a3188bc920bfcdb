import json
import math
import typing
import numpy as np
from tlroa.datatypes    import BoundaryCurve, AssessmentResult, ClearingSweep, State, Verdict
from tlroa.lyapunov     import LyapunovSeed
from tlroa.roa.geometry import polygon_area

__all__ = [
    'SCHEMA_VERSION',
    'seed_document',
    'boundary_document',
    'assessment_document',
    'sweep_document',
    'dump_document'
]

SCHEMA_VERSION = 1

def _plain(value: typing.Any) -> typing.Any:
    """JSON-compatible copy of `value`; NaN and infinities become None."""

    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}

    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]

    if isinstance(value, np.ndarray):
        return _plain(value.tolist())

    if isinstance(value, (bool, np.bool_)):
        return bool(value)

    if isinstance(value, (int, np.integer)):
        return int(value)

    if isinstance(value, (float, np.floating)):
        value = float(value)

        return value if math.isfinite(value) else None

    if isinstance(value, State):
        return [value.x1, value.x2]

    if isinstance(value, Verdict):
        return {'label': str(value), 'basin': value.basin}

    return value

def seed_document(seed: LyapunovSeed) -> typing.Dict[str, typing.Any]:
    return {
        'P':               seed.P,
        'c':               seed.c,
        'x_eq':            seed.x_eq,
        'semi_axes':       seed.semi_axes,
        'area':            seed.area,
        'validation_runs': seed.validation_runs,
        'halvings':        seed.halvings
    }

def boundary_document(curve: BoundaryCurve,
                      config_hash: str,
                      seed: typing.Optional[LyapunovSeed] = None
) -> typing.Dict[str, typing.Any]:
    document = {
        'schema_version': SCHEMA_VERSION,
        'kind':           'boundary',
        'config_hash':    config_hash,
        'scenario_hash':  curve.scenario_hash,
        't_back':         curve.t_back,
        'shift':          curve.shift,
        'sample_count':   curve.sample_count,
        'loss_kind':      curve.loss_kind,
        'loss_goal':      curve.loss_goal,
        'max_loss':       curve.max_loss,
        'area':           polygon_area(curve),
        'warnings':       list(curve.warnings),
        'thetas':         curve.thetas,
        'vertices':       curve.base_vertices
    }

    if seed is not None:
        document['seed'] = seed_document(seed)

    return document

def _assessment(result: AssessmentResult) -> typing.Dict[str, typing.Any]:
    return {
        'clearing_time':    result.clearing_time,
        'post_fault_state': result.post_fault_state,
        'wrapped_state':    result.wrapped_state,
        'verdict':          result.verdict,
        'shifts_tested':    list(result.shifts_tested),
        'simulated':        result.simulated,
        'note':             result.note
    }

def assessment_document(result: AssessmentResult, config_hash: str) -> typing.Dict[str, typing.Any]:
    document = _assessment(result)
    document.update({
        'schema_version': SCHEMA_VERSION,
        'kind':           'assessment',
        'config_hash':    config_hash,
        'scenario_hash':  result.scenario_hash
    })

    return document

def sweep_document(sweep: ClearingSweep, config_hash: str) -> typing.Dict[str, typing.Any]:
    """Clearing-time sweep with its windows; wall time is left to the run manifest."""

    return {
        'schema_version':   SCHEMA_VERSION,
        'kind':             'sweep',
        'config_hash':      config_hash,
        'scenario_hash':    sweep.scenario_hash,
        'simulation_count': sweep.simulation_count,
        'transitions':      sweep.transitions(),
        'windows':          [
            {'t_first': w.t_first, 't_last': w.t_last, 'verdict': w.verdict}
            for w in sweep.windows
        ],
        'points':           [
            {
                'clearing_time':    p.clearing_time,
                'post_fault_state': p.post_fault_state,
                'verdict':          p.verdict,
                'simulated':        p.simulated,
                'agrees':           p.agrees,
                'note':             p.note
            }
            for p in sweep.points
        ],
        'violations':       [p.clearing_time for p in sweep.violations]
    }

def dump_document(file: typing.TextIO, document: typing.Mapping[str, typing.Any]) -> None:
    json.dump(_plain(document), file, indent=2, sort_keys=True, allow_nan=False)
    file.write('\n')
