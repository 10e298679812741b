"""Exception types shared across the package."""


class WreathWalkError(Exception):
    pass


class ConfigError(WreathWalkError, ValueError):
    """Invalid user configuration. ``key`` names the offending setting."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


class ResourceGuardError(WreathWalkError, RuntimeError):
    """A size guard (solver cap, ball size, memory budget) was exceeded."""


class DegenerateSampleError(WreathWalkError, ValueError):
    """Sample has no spread (zero variance); it cannot be standardized."""


class LemmaHypothesisError(WreathWalkError, ValueError):
    pass


class InsufficientSamplesError(WreathWalkError, ValueError):
    """Too few samples or grid points for the requested estimator."""
