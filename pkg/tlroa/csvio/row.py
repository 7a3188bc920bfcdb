import typing
from tlroa.exceptions import BadDocument

__all__ = [
    'CSVRow'
]

class CSVRow:
    """Named fields of one record, converted on access.

    Failures raise `missing_error` or `invalid_error`, whose message is prefixed
    by the record's location when `source` and `line` are known.
    """

    __slots__ = ('values', 'source', 'line')

    missing_error: typing.Type[Exception] = BadDocument
    invalid_error: typing.Type[Exception] = BadDocument

    def __init__(self, values: typing.Mapping[str, str], source: typing.Optional[str] = None, line: typing.Optional[int] = None):
        self.values = values
        self.source = source
        self.line   = line

    def _error(self, cls: typing.Type[Exception], message: str) -> Exception:
        location = ''

        if self.source is not None:
            location = f'{self.source}:{self.line}: ' if self.line is not None else f'{self.source}: '

        return cls(location + message)

    def __contains__(self, fieldname: str) -> bool:
        return fieldname in self.values

    def __getitem__(self, fieldname: str) -> str:
        value = self.values.get(fieldname)

        if value is None:
            raise self._error(self.missing_error, f"missing field '{fieldname}'")

        return value

    def required(self,
                 fieldname: str,
                 factory: typing.Callable[[str], typing.Any],
                 allow_empty_string: bool = False
    ) -> typing.Any:
        value = self[fieldname]

        if value.strip() == '' and not allow_empty_string:
            raise self._error(self.missing_error, f"got empty string at field '{fieldname}'")

        try:
            return factory(value)
        except ValueError as exc:
            raise self._error(self.invalid_error, f"invalid value '{value}' at field '{fieldname}': {exc}") from None

    def optional(self,
                 fieldname: str,
                 factory: typing.Callable[[str], typing.Any],
                 default: typing.Any = None
    ) -> typing.Any:
        """Like `required()`, but a missing or empty field gives `default`."""

        if self.values.get(fieldname) is None or self.values[fieldname].strip() == '':
            return default

        return self.required(fieldname, factory)
