import typing
import pandas as pd
from tlroa.csvio.header import write_header, format_value, csv_writer
from tlroa.sampling     import SampleSet

__all__ = [
    'write_samples_csv',
    'write_table_csv'
]

def write_samples_csv(file: typing.TextIO, samples: SampleSet, config_hash: str) -> None:
    """Writes one row per sample with the loss of the interval it starts."""

    write_header(
        file,
        'samples',
        config_hash,
        {'theta': 'rad', 'delta': 'rad', 'ddelta': 'rad/s', 'interval_loss': '-'},
        {
            'loss_kind':   samples.loss_kind.label,
            'loss_goal':   samples.loss_goal,
            'reason':      samples.reason.label,
            'evaluations': samples.evaluations
        }
    )

    writer = csv_writer(file)
    writer.writerow(['theta', 'delta', 'ddelta', 'insertion_index', 'interval_loss'])

    for theta, (delta, omega), index, loss in zip(samples.thetas, samples.points, samples.insertion_index, samples.losses):
        writer.writerow([format_value(theta), format_value(delta), format_value(omega), int(index), format_value(loss)])

def write_table_csv(file: typing.TextIO,
                    table: pd.DataFrame,
                    kind: str,
                    config_hash: str,
                    units: typing.Optional[typing.Mapping[str, str]] = None
) -> None:
    """Writes a study table (one row per variant) with the common header."""

    write_header(file, kind, config_hash, units or {})

    writer = csv_writer(file)
    writer.writerow(list(table.columns))

    for row in table.itertuples(index=False):
        writer.writerow([format_value(value) for value in row])
