import csv
import math
import typing
import numpy as np
from tlroa              import utils
from tlroa.csvio.header import write_header, read_header, format_value, csv_writer
from tlroa.csvio.row    import CSVRow
from tlroa.datatypes    import BoundaryCurve
from tlroa.exceptions   import BadDocument, ConfigError

__all__ = [
    'write_boundary_csv',
    'read_boundary_csv'
]

def write_boundary_csv(file: typing.TextIO, curve: BoundaryCurve, config_hash: str) -> None:
    """Writes `theta, delta, ddelta` rows of the home vertices with the curve's metadata."""

    write_header(
        file,
        'boundary',
        config_hash,
        {'theta': 'rad', 'delta': 'rad', 'ddelta': 'rad/s'},
        {
            'scenario_hash': curve.scenario_hash,
            't_back':        curve.t_back,
            'shift':         curve.shift,
            'sample_count':  curve.sample_count,
            'loss_kind':     curve.loss_kind,
            'loss_goal':     curve.loss_goal,
            'max_loss':      curve.max_loss
        }
    )

    writer = csv_writer(file)
    writer.writerow(['theta', 'delta', 'ddelta'])

    thetas = curve.thetas if curve.thetas is not None else [None] * len(curve)

    for theta, (delta, omega) in zip(thetas, curve.base_vertices):
        writer.writerow([format_value(theta), format_value(delta), format_value(omega)])

def _info(info: typing.Mapping[str, str], key: str, factory, default):
    if key not in info or info[key] == '':
        return default

    try:
        return factory(info[key])
    except ValueError:
        raise BadDocument(f"invalid header value '{info[key]}' for '{key}'") from None

def read_boundary_csv(file: typing.TextIO,
                      scenario_hash: typing.Optional[str] = None,
                      source: typing.Optional[str] = None
) -> BoundaryCurve:
    """Reads a file written by `write_boundary_csv`.

    With `scenario_hash`, a curve estimated for another scenario raises
    `ConfigError`.
    """

    text              = list(file)
    kind, info, lines = read_header(iter(text))
    first_row         = len(text) - len(lines) + 2

    if kind != 'boundary':
        raise BadDocument(f"expected a boundary file, got '{kind}'")

    if scenario_hash is not None and info.get('scenario_hash') != scenario_hash:
        raise ConfigError(f"boundary was estimated for scenario {info.get('scenario_hash')!r}, not {scenario_hash!r}", source)

    reader   = csv.DictReader(lines)
    thetas   = []
    vertices = []

    for line, values in enumerate(reader, start=first_row):
        row = CSVRow(values, source, line)

        thetas.append(row.optional('theta', utils.parse_float, math.nan))
        vertices.append((row.required('delta', utils.parse_float), row.required('ddelta', utils.parse_float)))

    if len(vertices) < 3:
        raise BadDocument(f'boundary file has {len(vertices)} vertices, at least 3 are needed')

    thetas = np.array(thetas)

    try:
        return BoundaryCurve(
            base_vertices = np.array(vertices),
            t_back        = _info(info, 't_back', float, 0.0),
            thetas        = None if np.all(np.isnan(thetas)) else thetas,
            shift         = _info(info, 'shift', int, 0),
            scenario_hash = info.get('scenario_hash', ''),
            sample_count  = _info(info, 'sample_count', int, 0),
            loss_kind     = info.get('loss_kind', ''),
            loss_goal     = _info(info, 'loss_goal', float, math.nan),
            max_loss      = _info(info, 'max_loss', float, math.nan)
        )
    except ValueError as exc:
        raise BadDocument(f'invalid boundary: {exc}') from None
