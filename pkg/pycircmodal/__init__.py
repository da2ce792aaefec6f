"""
pycircmodal is a library for nonparametric modal regression with
circular data: the conditional modes of a real or circular response
given a real or circular predictor are found with (circular)
conditional mean shift.
"""
from . import bandwidth
from . import circular
from . import kernels
from . import metrics
from . import openfile
from . import readfiles
from . import simulate

from .density import Bandwidths, ConditionalDensity, RegressionSample
from .meanshift import MeanShiftConfig, ModalMultifunction, fit_multifunction
from ._version import version as __version__

__license__ = "GPL v2"
