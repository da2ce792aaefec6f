"""Errors and warnings of the file readers"""


class SampleFormatError(ValueError):
    """A data file does not follow the expected layout"""

    def __init__(self, message, lineno=None):
        super(SampleFormatError, self).__init__(message)
        self.lineno = lineno


class WrappedAngleWarning(UserWarning):
    pass
