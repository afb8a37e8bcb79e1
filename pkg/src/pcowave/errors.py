"""Exception types raised by pcowave."""


class PcoWaveError(Exception):
    """Base class for all pcowave errors."""


class UnsupportedOrderError(PcoWaveError, ValueError):
    """Requested number of vanishing moments is outside the supported range."""


class CascadeDepthError(PcoWaveError, ValueError):
    """Requested dyadic refinement depth cannot be built."""


class CascadeError(PcoWaveError, RuntimeError):
    """Internal failure of the cascade construction (no simple unit eigenvalue)."""


class EmptySampleError(PcoWaveError, ValueError):
    """An operation that needs data received an empty sample."""


class LevelRangeError(PcoWaveError, ValueError):
    """Resolution level outside the range held by a coefficient pyramid."""


class GridError(PcoWaveError, ValueError):
    """Evaluation grid is malformed (non-uniform or not increasing)."""


class CoverageError(PcoWaveError, ValueError):
    """Quadrature grid does not cover the required support."""


class ModelParameterError(PcoWaveError, ValueError):
    """Density model parameters are invalid."""


class SampleSizeError(PcoWaveError, ValueError):
    """Sample size below the minimum required by an operation."""


class ConfigurationError(PcoWaveError, ValueError):
    """Inconsistent or empty selection configuration."""
