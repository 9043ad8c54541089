"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid or out-of-range input parameters (CLI exit code 1)."""


class LevelTooLargeError(ParameterError):
    """A lattice level exceeds the configured enumeration ceiling."""


class InconsistencyError(RuntimeError):
    """An exact computation contradicts a proven identity (CLI exit code 2)."""
