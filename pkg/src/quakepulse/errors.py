"""Exception hierarchy.

``ConfigError`` marks a usage problem (bad flags, bad config values);
everything under ``DataError`` marks a problem with the input data itself.
The CLI maps the two families to distinct exit codes.
"""


class QuakeError(Exception):
    pass


class ConfigError(QuakeError, ValueError):
    pass


class DataError(QuakeError):
    pass


class CorpusError(DataError):
    """Unreadable or corrupt export (e.g. duplicate post ids)."""


class ContractError(DataError, ValueError):
    """An operation received input that violates its precondition."""


class EmptyCorpusError(DataError):
    pass


class TrainingError(DataError):
    pass


class StageError(DataError):
    """A module error re-raised with the pipeline stage that produced it."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")
