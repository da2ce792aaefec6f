"""Module readfiles: Import samples, simulation models and fit results"""
import pathlib

import numpy as np

# To add a filetype add it here and in the
# dictionary at the end of this file.
from .read_model_yaml import open_model
from .read_multifunction_table import open_multifunction
from .read_sample_table import open_sample
from .util import SampleFormatError, WrappedAngleWarning  # noqa: F401


def get_supported_extensions():
    """List of extensions of currently supported file types"""
    extlist = []
    for key in filetypes_dict:
        ext = key.split("|")[-1].split(";")
        extlist += [e.lower().strip("*. ") for e in ext]
    return sorted(np.unique(extlist).tolist())


def open_any(path):
    """Open a sample (.csv, .txt, .dat) or a model definition (.yaml)

    Parameters
    ----------
    path : str or pathlib.Path
        Full path to the file.

    Returns
    -------
    data : RegressionSample or SimModel
    """
    path = pathlib.Path(path)
    suffix = path.suffix.lower()
    for key, opener in filetypes_dict.items():
        wildcards = key.split("|")[1].split(";")
        if any(wc.strip("*").lower() == suffix for wc in wildcards):
            return opener(path)
    raise ValueError("Unsupported file type '{}', expected one of {}"
                     .format(path.suffix, get_supported_extensions()))


# Dictionary with filetypes that we can open
# The wildcards point to the appropriate functions.
filetypes_dict = {"Regression sample (*.csv)|*.csv;*.txt;*.dat": open_sample,
                  "Simulation model (*.yaml)|*.yaml;*.yml": open_model,
                  }
