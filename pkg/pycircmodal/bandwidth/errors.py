"""Errors and warnings of bandwidth selection"""


class InsufficientDataError(ValueError):
    """The sample is too small for the requested selector"""
    pass


class PilotFitError(RuntimeError):
    """All expectation-maximization restarts of the pilot degenerated"""
    pass


class UnsupportedGeometryError(NotImplementedError):
    """The selector is not available for the geometry of the sample"""
    pass


class DegenerateRestartWarning(UserWarning):
    pass
