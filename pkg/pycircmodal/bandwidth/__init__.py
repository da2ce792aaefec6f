"""Data-driven selection of the smoothing pair

Modal cross-validation is available for all geometries; the
parametric bootstrap with a mixture-of-regressions pilot is available
for a circular predictor with a real response.
"""
# flake8: noqa: F401
from .bootstrap import DEFAULT_BOOT_B, bootstrap_ise
from .cv import modal_cv_score, score_grid, select_by_cv
from .errors import (DegenerateRestartWarning, InsufficientDataError,
                     PilotFitError, UnsupportedGeometryError)
from .grid import (DEFAULT_CONCENTRATIONS, BandwidthGrid, ScoreTable,
                   default_grid, linear_bandwidths)
from .pilot import MixturePilot, PeriodicBSplineBasis, fit_mixture_pilot
