"""Entropy-stable finite-volume solver for the compressible Euler equations."""
from .gas import AIR, GasModel, PositivityViolation

__version__ = "0.1.0"

__all__ = ["AIR", "GasModel", "PositivityViolation", "__version__"]
