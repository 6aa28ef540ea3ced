"""Exception types shared across the package."""


class SubaugError(Exception):
    """Base class for every error this package raises deliberately."""


class FormatError(SubaugError):
    """An input file could not be parsed at all (bad columns, bad brackets)."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}"
            if column is not None:
                where += f", column {column}"
            where += ")"
        super().__init__(message + where)


class DataValidationError(SubaugError):
    """Parsed input violates a structural invariant (bad tree, bad heads)."""


class ConfigError(SubaugError):
    """Invalid configuration, flag combination, or precondition."""


class AugmentError(SubaugError):
    """Augmentation cannot proceed: no usable donors exist."""
