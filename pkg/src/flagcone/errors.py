"""Exception types shared across the package."""


class FlagconeError(Exception):
    """Base class for all library errors."""


class InvalidRankError(FlagconeError, ValueError):
    """Root-system rank outside the supported range."""


class DegenerateParabolicError(FlagconeError, ValueError):
    """Theta = Sigma leaves no Kahler generators (X_P is a point)."""


class ChartError(FlagconeError, ValueError):
    """Coordinate vector does not match the big-cell chart."""


class JetDomainError(FlagconeError, ValueError):
    """log / real power / reciprocal applied outside its domain."""


class TruncationError(FlagconeError, ValueError):
    """Requested derivative exceeds the jet truncation order."""


class InternalConsistencyError(FlagconeError, RuntimeError):
    """A structural guarantee failed (non-SPD metric, singular Hessian);
    signals a bug, not a legitimate math case."""


class ContactDegeneracyError(FlagconeError, RuntimeError):
    """eta ^ (d eta)^m vanished at a sample point."""


class ConfigError(FlagconeError, ValueError):
    """Invalid job configuration (CLI exit code 2)."""
