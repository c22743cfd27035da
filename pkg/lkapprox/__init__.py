"""
lkapprox: numerical experiments on approximation in anisotropic Lorentz-Karamata spaces.
"""

from lkapprox.io import ConfigReader, ExperimentConfig, ReportWriter

__version__ = "0.1.0"

__all__ = [
    "ConfigReader",
    "ExperimentConfig",
    "ReportWriter",
    "bounds",
    "io",
    "spaces",
]
