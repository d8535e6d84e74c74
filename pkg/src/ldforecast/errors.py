"""Exception hierarchy shared by every stage of the pipeline."""


class ForecastError(Exception):
    """Base class for all errors raised by ldforecast."""


class ValidationError(ForecastError, ValueError):
    pass


class RangeError(ValidationError):
    """A value lies outside its legal range.

    ``field`` and ``index`` locate the offending value when it belongs to
    a series.
    """

    def __init__(self, message, field=None, index=None):
        super().__init__(message)
        self.field = field
        self.index = index


class LengthError(ValidationError):
    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ParseError(ForecastError, ValueError):
    pass


class InvariantError(ForecastError, ValueError):
    pass


class UnknownMunicipality(ForecastError, KeyError):
    def __str__(self):
        return f"no climate means configured for municipality {self.args[0]!r}"


class LDSyntaxError(ParseError):
    """Malformed intermediate code; carries 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownLabel(ParseError):
    def __init__(self, label, line=None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown label {label!r}{where}")
        self.label = label
        self.line = line


class DuplicateSection(ParseError):
    pass


class MissingSection(ParseError):
    pass


class MissingLabel(ForecastError, KeyError):
    def __init__(self, label, label_set=None):
        super().__init__(label)
        self.label = label
        self.label_set = label_set

    def __str__(self):
        where = f" in label set {self.label_set!r}" if self.label_set else ""
        return f"no surface string for label {self.label!r}{where}"


class UnknownLanguage(ForecastError, LookupError):
    pass


class EmptyInput(ForecastError, ValueError):
    pass
