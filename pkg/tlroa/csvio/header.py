import csv
import math
import typing
from tlroa            import utils
from tlroa.exceptions import BadDocument

__all__ = [
    'HeaderInfo',
    'format_value',
    'write_header',
    'read_header',
    'csv_writer'
]

HeaderInfo = typing.Dict[str, str]

def format_value(value: typing.Any) -> str:
    """Text of a CSV cell; floats keep 17 significant digits and NaN is 'nan'."""

    if value is None:
        return ''

    if isinstance(value, bool):
        return 'true' if value else 'false'

    if isinstance(value, float) or hasattr(value, 'dtype') and value.dtype.kind == 'f':
        value = float(value)

        return 'nan' if math.isnan(value) else utils.format_float(value)

    return str(value)

def write_header(file: typing.TextIO,
                 kind: str,
                 config_hash: str,
                 units: typing.Mapping[str, str],
                 info: typing.Optional[typing.Mapping[str, typing.Any]] = None
) -> None:
    """Writes the `#` comment lines that precede every CSV file's column row."""

    file.write(f'# tlroa {kind}\n')
    file.write(f'# config_hash: {config_hash}\n')

    for key, value in (info or {}).items():
        file.write(f'# {key}: {format_value(value)}\n')

    file.write('# units: ' + ', '.join(f'{column}={unit}' for column, unit in units.items()) + '\n')

def read_header(lines: typing.Iterator[str]) -> typing.Tuple[str, HeaderInfo, typing.List[str]]:
    """Splits a file into its header comment (kind and key-value pairs) and the remaining lines."""

    kind  = ''
    info  = {}
    rest  = []

    for line in lines:
        if not line.startswith('#'):
            rest.append(line)
            continue

        text = line[1:].strip()

        if text.startswith('tlroa '):
            kind = text[len('tlroa '):]
        elif ':' in text:
            key, value = text.split(':', 1)
            info[key.strip()] = value.strip()

    if not kind:
        raise BadDocument('not a file written by tlroa (missing header)')

    return kind, info, rest

def csv_writer(file: typing.TextIO):
    return csv.writer(file, delimiter=',', lineterminator='\n')
