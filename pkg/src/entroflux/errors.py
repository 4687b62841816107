"""Exception types shared across the package."""
from .gas import PositivityViolation


class ConfigError(ValueError):
    """Bad configuration: unknown key, bad value, or inconsistent boundaries."""

    def __init__(self, message, key=None, line=None):
        super().__init__(message)
        self.key = key
        self.line = line


class NonConvergence(RuntimeError):
    """Steady run exhausted its step budget before the residual threshold."""

    def __init__(self, message, steps=None, residual=None):
        super().__init__(message)
        self.steps = steps
        self.residual = residual


__all__ = ["ConfigError", "NonConvergence", "PositivityViolation"]
