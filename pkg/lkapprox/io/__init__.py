"""I/O operations for experiment configs and result artifacts."""

from lkapprox.io.core import ExperimentConfig, format_value, parse_window
from lkapprox.io.reader import ConfigReader, parse_value
from lkapprox.io.writer import ReportWriter, read_plotdata

__all__ = [
    "ConfigReader",
    "ExperimentConfig",
    "ReportWriter",
    "format_value",
    "parse_value",
    "parse_window",
    "read_plotdata",
]
