"""Exception hierarchy shared by the pipeline stages.

Each class carries the process exit code the CLI reports for it.
"""


class PipelineError(Exception):
    exit_code = 3
    kind = "data"


class ConfigError(PipelineError):
    exit_code = 1
    kind = "config"


class InputError(PipelineError):
    """A required input file is missing or unreadable."""

    exit_code = 2
    kind = "input"


class DataError(PipelineError):
    """Input was readable but malformed (bad CSV, missing column, empty catalog)."""

    exit_code = 3
    kind = "data"
