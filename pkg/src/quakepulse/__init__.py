"""Earthquake impact analytics over exported microblog corpora.

The pipeline loads and cleans posts, segments their text, and derives four
signals per event: hot words, hourly volume, sentiment evolution and a
keyword-based disaster-level distribution.
"""

from quakepulse.errors import (
    ConfigError,
    ContractError,
    CorpusError,
    DataError,
    EmptyCorpusError,
    QuakeError,
    StageError,
    TrainingError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ContractError",
    "CorpusError",
    "DataError",
    "EmptyCorpusError",
    "QuakeError",
    "StageError",
    "TrainingError",
    "__version__",
]
