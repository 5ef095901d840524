"""Exception hierarchy. Everything raised on purpose derives from NoPhishError."""


class NoPhishError(Exception):
    """Base class for all nophish errors."""


class ParseError(NoPhishError):
    """A data file could not be parsed. Carries the 1-based line number."""

    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no


class ValidationError(NoPhishError):
    """Parsed data violates a domain invariant (names the offending row/column)."""


class ConfigError(NoPhishError):
    """Bad configuration: missing mapped column, bad threshold file, etc."""


class UrlError(NoPhishError):
    """The target URL cannot be parsed into scheme/host parts."""


class ModelFormatError(NoPhishError):
    """Base for model container problems."""


class ModelVersionError(ModelFormatError):
    """Container format version is not supported; names both versions."""

    def __init__(self, found, supported):
        super().__init__(
            f"model container version {found} is not supported (this build reads version {supported})"
        )
        self.found = found
        self.supported = supported


class ModelCorruptError(ModelFormatError):
    """Container is truncated or otherwise unreadable; no partial model is returned."""


class TrainingError(NoPhishError):
    """Training preconditions violated (e.g. single-class input for the SVM)."""
