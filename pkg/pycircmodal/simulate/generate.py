"""Random samples from simulation models"""
import numpy as np

from .. import circular
from ..density import RegressionSample


def draw(model, n, seed=None, return_labels=False):
    """Draw an i.i.d. sample from a simulation model

    Parameters
    ----------
    model : SimModel
        The data generating process.
    n : int
        Sample size.
    seed : int, numpy.random.SeedSequence, numpy.random.Generator or None
        Random source; equal seeds give equal samples.
    return_labels : bool
        Also return the index of the branch of each observation.

    Returns
    -------
    sample : RegressionSample
    labels : ndarray of int
        Only if `return_labels`.
    """
    n = int(n)
    if n < 1:
        raise ValueError("`n` must be at least 1, got {}!".format(n))
    rng = np.random.default_rng(seed)
    if model.predictor["law"] == "uniform_circle":
        x = rng.uniform(-np.pi, np.pi, size=n)
    else:
        x = rng.uniform(model.predictor["low"], model.predictor["high"],
                        size=n)
    labels = rng.choice(len(model.branches), size=n, p=model.weights)
    y = np.zeros(n)
    for tt, branch in enumerate(model.branches):
        mask = labels == tt
        count = int(np.sum(mask))
        center = branch(x[mask])
        disp = branch.dispersion
        if model.response_is_circular:
            if np.isinf(disp):
                noise = np.zeros(count)
            else:
                noise = rng.vonmises(0.0, disp, size=count)
        else:
            noise = disp * rng.standard_normal(count)
        y[mask] = center + noise
    if model.response_is_circular:
        y = circular.wrap(y)
    sample = RegressionSample(model.geometry, x, y,
                              name="simulated: {}".format(model.name))
    if return_labels:
        return sample, labels
    return sample
