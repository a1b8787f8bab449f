"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid encoder or run configuration (bad W/X/k combination, etc.)."""


class DimensionError(ValueError):
    """Array shapes do not satisfy an operation's requirements."""


class FingerprintMismatch(ValueError):
    """Feature vectors were produced under different encoder configurations."""
