"""This module contains litmap exceptions."""

__all__ = ('LitmapError', 'InputError', 'CorpusError', 'VocabularyError', 'ConfigError',
           'AnalysisError', 'ClusteringError', 'SemanticsError', 'CentralityError',
           'RenderError', 'PipelineError', 'EmptyNetworkError')


class LitmapError(Exception):
    """Base class for all litmap exceptions."""


class InputError(LitmapError):
    """Raised when user supplied input cannot be used."""


class CorpusError(InputError):
    """Raised when a bibliographic record is malformed."""

    def __init__(self, message, line=None, field=None):
        """Build an error pointing at the offending record.

        Arguments:
            message {str} -- what is wrong

        Keyword Arguments:
            line {int} -- 1-based input line number (default: {None})
            field {str} -- offending field name (default: {None})
        """
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append('line {}'.format(line))
        if field is not None:
            where.append('field {!r}'.format(field))
        if where:
            message = '{}: {}'.format(', '.join(where), message)
        super().__init__(message)


class VocabularyError(InputError):
    """Raised when a vocabulary file does not describe a valid tree."""

    def __init__(self, message, term=None):
        self.term = term
        super().__init__(message)


class ConfigError(InputError):
    """Raised when a configuration value is out of range."""

    def __init__(self, message, key=None):
        self.key = key
        if key is not None:
            message = '{}: {}'.format(key, message)
        super().__init__(message)


class AnalysisError(LitmapError):
    """Raised when an analysis precondition does not hold."""


class ClusteringError(AnalysisError):
    """Raised when a partition cannot be computed or scored."""


class SemanticsError(AnalysisError):
    """Raised when a clinical rate or profile is undefined."""


class CentralityError(AnalysisError):
    """Raised when a centrality query is invalid."""


class RenderError(AnalysisError):
    """Raised when an export lacks data for some node."""


class PipelineError(LitmapError):
    """Raised when a pipeline stage fails."""

    def __init__(self, stage, cause=None, message=None):
        """Wrap a stage failure.

        Arguments:
            stage {str} -- stage name

        Keyword Arguments:
            cause {Exception} -- original error (default: {None})
            message {str} -- explicit message (default: {None})
        """
        self.stage = stage
        self.cause = cause
        if message is None:
            message = str(cause) if cause is not None else 'failed'
        super().__init__('stage {}: {}'.format(stage, message))


class EmptyNetworkError(PipelineError):
    """Raised when no paper survives selection and filtering."""

    def __init__(self, stage='filter'):
        super().__init__(stage, message='no paper left in the network')
