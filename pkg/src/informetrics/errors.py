"""Exception hierarchy shared by all analysis modules."""


class InformetricsError(Exception):
    """Base class for every error raised by this package."""


class InputEncodingError(InformetricsError):
    """The input byte stream is not valid UTF-8."""


class UsageError(InformetricsError, ValueError):
    """A caller passed an unsupported option (e.g. an unknown format tag)."""


class RecordFormatError(InformetricsError, ValueError):
    """The input is structurally unusable as a whole (e.g. missing header columns)."""


class DomainError(InformetricsError, ValueError):
    """An argument is outside the domain of an analysis operation."""


class InsufficientDataError(DomainError):
    """Too few usable observations to fit a model."""


class NoGrowthError(DomainError):
    """A growth fit produced a non-positive slope."""


class DegenerateSpecError(DomainError):
    """A synthetic-corpus spec cannot be realised (more journals than papers in a zone)."""
