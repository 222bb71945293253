"""Exception types shared across the package."""


class SchemaError(ValueError):
    """A required column or config field is missing or malformed."""


class ParseError(ValueError):
    """A cell could not be parsed; message names the offending row."""


class EmptyInputError(ValueError):
    """An input file or collection that must be nonempty is empty."""


class DimensionMismatchError(ValueError):
    """Feature vectors, weights, or classifiers disagree on dimensionality."""


class DegenerateTrainingError(ValueError):
    """Training data contains a single class."""


class InfeasibleRecourseError(ValueError):
    """No positively classified point is reachable (zero classifier weights)."""


class UndefinedRateError(ValueError):
    """A rate over an empty set of negatively classified agents."""


class UnsupportedModeError(ValueError):
    """An operation invoked outside the regime it is exact for."""


class ConfigError(ValueError):
    """Invalid experiment configuration; message names the field."""
