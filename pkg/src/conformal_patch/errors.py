"""Exception hierarchy.

Everything derives from ``ValueError`` so callers that only care about bad
input can catch that.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of a formula."""


class RangeError(DomainError):
    """A synthesis target cannot be reached within the supported range."""


class MetricUndefined(ValueError):
    """A figure of merit does not exist for the given data."""


class BeamwidthUndefined(MetricUndefined):
    pass


class NoSidelobe(MetricUndefined):
    pass


class NoBandError(MetricUndefined):
    """The reflection trace never closes a -10 dB band."""


class SpecValidationError(ValueError):
    """A design-spec document violates the schema.

    ``field`` is the dotted path of the offending key.
    """

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}")


class SpecParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
