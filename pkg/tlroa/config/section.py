import typing
from tlroa.csvio.row  import CSVRow
from tlroa.exceptions import ConfigError, MissingValueError, InvalidValueError

__all__ = [
    'ConfigSection'
]

class ConfigSection(CSVRow):
    """Keys of one configuration section, with the line each key came from.

    Keys set by an override have no line; their source is `--set`.
    """

    __slots__ = ('name', 'lines', 'sources')

    missing_error = MissingValueError
    invalid_error = InvalidValueError

    def __init__(self,
                 name: str,
                 values: typing.Mapping[str, str],
                 source: typing.Optional[str] = None,
                 line: typing.Optional[int] = None,
                 lines: typing.Optional[typing.Mapping[str, int]] = None,
                 sources: typing.Optional[typing.Mapping[str, str]] = None
    ):
        super().__init__(values, source, line)

        self.name    = name
        self.lines   = dict(lines or {})
        self.sources = dict(sources or {})

    def _error(self, cls: typing.Type[Exception], message: str, key: typing.Optional[str] = None) -> Exception:
        if key is None:
            return cls(f'[{self.name}] {message}', self.source, self.line)

        source = self.sources.get(key, self.source)
        line   = self.lines.get(key, self.line) if source == self.source else None

        return cls(f'[{self.name}] {message}', source, line)

    def __getitem__(self, key: str) -> str:
        try:
            return self.values[key]
        except KeyError:
            raise self._error(self.missing_error, f"missing key '{key}'") from None

    def required(self,
                 key: str,
                 factory: typing.Callable[[str], typing.Any],
                 allow_empty_string: bool = False
    ) -> typing.Any:
        value = self[key]

        if value.strip() == '' and not allow_empty_string:
            raise self._error(self.missing_error, f"got empty value for key '{key}'", key)

        try:
            return factory(value)
        except ValueError as exc:
            raise self._error(self.invalid_error, f"invalid value '{value}' for key '{key}': {exc}", key) from None

    def exactly_one(self, *keys: str) -> typing.Optional[str]:
        """Which of `keys` is set; None if none is and an error if several are."""

        present = [key for key in keys if key in self.values and self.values[key].strip() != '']

        if len(present) > 1:
            raise self._error(self.invalid_error, 'keys ' + ' and '.join(f"'{k}'" for k in present) + ' are mutually exclusive', present[1])

        return present[0] if present else None

    def invalid(self, key: str, message: str) -> ConfigError:
        """Error for a value that parses but is rejected as a whole."""

        return self._error(self.invalid_error, f"invalid value for key '{key}': {message}", key)

    def rejected(self, exc: ValueError, fields: typing.Optional[typing.Mapping[str, typing.Sequence[str]]] = None) -> ConfigError:
        """Error for a value the built object refused.

        `fields` maps the refused field to the keys that may have set it; the first
        one present names the line. Without a match the section header's line is used.
        """

        field = getattr(exc, 'field', None)
        keys  = (fields or {}).get(field, (field,))
        key   = next((k for k in keys if k in self.values), None)

        return self._error(self.invalid_error, str(exc), key)

    def unknown_keys(self, known: typing.Iterable[str]) -> None:
        known = set(known)

        for key in self.values:
            if key not in known:
                raise self._error(self.invalid_error, f"unknown key '{key}'", key)
