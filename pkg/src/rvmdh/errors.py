"""Exception types shared across the pipeline.

``ConfigError`` (and subclasses) signal bad configuration or malformed
input files; ``DataError`` (and subclasses) signal data that is too
degenerate or too sparse for the requested computation.  The CLI maps
these onto exit codes 2 and 4 respectively, and plain ``OSError`` onto 3.
"""


class ConfigError(Exception):
    """Invalid configuration, option value, or input-file format."""


class _LocatedError(ConfigError):
    """Error tied to a specific line of an input file."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = str(path) if path is not None else "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


class ParseError(_LocatedError):
    """Row or line that does not follow the expected format."""


class ValidationError(_LocatedError):
    """Well-formed value that violates a domain constraint (e.g. price <= 0)."""


class DataError(Exception):
    """Data cannot support the requested statistic."""


class EmptyDataError(DataError):
    """No usable observations remain."""


class DegenerateDataError(DataError):
    """Input carries no usable variation (constant sample, zero RV, ...)."""


class InsufficientDataError(DataError):
    """Fewer observations than the statistic requires."""


class AlignmentError(DataError):
    """Two day-indexed series do not cover the same day set."""


class MissingDayError(DataError):
    """A day lacks the ticks needed to seed the sampling grid."""


class DegenerateFitError(DataError):
    """Least-squares fit has no positive level or a singular system."""


class SimulationDivergedError(DataError):
    """Latent log-price left the representable range."""
