"""Kernel estimators of predictor marginals and conditional densities"""
import collections

import numpy as np

from . import circular
from .kernels import make_kernel

#: Supported regression geometries (predictor_response)
GEOMETRIES = ("circ_lin", "lin_circ", "circ_circ")

#: Predictor marginal below which the conditional estimate is undefined
TAU_DEN = 1e-10


class LowSupportError(ValueError):
    """The predictor marginal at a point is too small for a ratio"""

    def __init__(self, message, point=None):
        super(LowSupportError, self).__init__(message)
        self.point = point


def normalize_geometry(geometry):
    """Return the canonical geometry tag (accepts dashes: "circ-lin")"""
    tag = str(geometry).strip().lower().replace("-", "_")
    if tag not in GEOMETRIES:
        raise ValueError("Unknown geometry '{}', expected one of {}".format(
            geometry, GEOMETRIES))
    return tag


class RegressionSample(object):
    """Paired (predictor, response) observations of one geometry"""

    def __init__(self, geometry, predictors, responses, name=None):
        """
        Parameters
        ----------
        geometry : str
            One of `GEOMETRIES`; "circ_lin" means circular predictor
            and real-valued response.
        predictors : array-like of length n
            Predictor values (radians if circular).
        responses : array-like of length n
            Response values (radians if circular).
        name : str
            Optional label, e.g. the file the sample was read from.

        Notes
        -----
        Circular entries are wrapped to (-π, π].
        """
        self._geometry = normalize_geometry(geometry)
        predictors = np.array(predictors, dtype=float).ravel()
        responses = np.array(responses, dtype=float).ravel()
        if predictors.size == 0:
            raise ValueError("A sample needs at least one observation!")
        if predictors.size != responses.size:
            raise ValueError("Predictors and responses must have equal "
                             "length ({} vs {})!".format(predictors.size,
                                                         responses.size))
        if not (np.all(np.isfinite(predictors))
                and np.all(np.isfinite(responses))):
            raise ValueError("Sample values must be finite!")
        if self.predictor_is_circular:
            predictors = np.atleast_1d(circular.wrap(predictors))
        if self.response_is_circular:
            responses = np.atleast_1d(circular.wrap(responses))
        predictors.flags.writeable = False
        responses.flags.writeable = False
        self._predictors = predictors
        self._responses = responses
        self.name = name

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, RegressionSample)
                and self.geometry == other.geometry
                and np.array_equal(self.predictors, other.predictors)
                and np.array_equal(self.responses, other.responses))

    def __repr__(self):
        return "RegressionSample '{}' ({}, n={})".format(
            self.name, self.geometry, self.n)

    @property
    def geometry(self):
        return self._geometry

    @property
    def n(self):
        return self._predictors.size

    @property
    def predictors(self):
        return self._predictors

    @property
    def responses(self):
        return self._responses

    @property
    def predictor_is_circular(self):
        return self._geometry in ("circ_lin", "circ_circ")

    @property
    def response_is_circular(self):
        return self._geometry in ("lin_circ", "circ_circ")

    def drop(self, index):
        """Copy of the sample without observation `index`"""
        keep = np.ones(self.n, dtype=bool)
        keep[index] = False
        return RegressionSample(self.geometry, self.predictors[keep],
                                self.responses[keep], name=self.name)

    def take(self, indices):
        """Copy of the sample restricted to `indices`"""
        return RegressionSample(self.geometry, self.predictors[indices],
                                self.responses[indices], name=self.name)

    def with_responses(self, responses):
        """Copy of the sample with the same predictors and new responses"""
        return RegressionSample(self.geometry, self.predictors, responses,
                                name=self.name)

    def rotate_predictors(self, alpha):
        """Rotate circular predictors by `alpha` radians"""
        if not self.predictor_is_circular:
            raise ValueError("Predictors of '{}' samples are not "
                             "circular!".format(self.geometry))
        return RegressionSample(self.geometry, self.predictors + alpha,
                                self.responses, name=self.name)

    def shift_responses(self, offset):
        """Rotate circular or translate real responses by `offset`"""
        return self.with_responses(self.responses + offset)


class Bandwidths(collections.namedtuple("Bandwidths",
                                        ["predictor_smoothing",
                                         "response_smoothing"])):
    """The smoothing pair of a conditional density estimate

    `predictor_smoothing` is κ/ν for circular predictors and h for
    linear predictors; `response_smoothing` is h for real responses
    and κ for circular responses.
    """
    __slots__ = ()

    def __new__(cls, predictor_smoothing, response_smoothing):
        values = []
        for name, val in (("predictor_smoothing", predictor_smoothing),
                          ("response_smoothing", response_smoothing)):
            val = float(val)
            if not np.isfinite(val) or val <= 0:
                raise ValueError("`{}` must be positive and finite, "
                                 "got {}!".format(name, val))
            values.append(val)
        return super(Bandwidths, cls).__new__(cls, *values)


class ConditionalDensity(object):
    """Kernel estimate of the conditional density f(r|δ)

    f̂(r|δ) = Σ_j w_δ(Δ_j) K(r - R_j) / Σ_j w_δ(Δ_j)

    with predictor weights w_δ(Δ_j) and response kernel K chosen
    according to the geometry of the sample.
    """

    def __init__(self, sample, bandwidths):
        """
        Parameters
        ----------
        sample : RegressionSample
            The data.
        bandwidths : Bandwidths or tuple of two floats
            The smoothing pair (predictor, response).
        """
        if not isinstance(sample, RegressionSample):
            raise ValueError("`sample` must be instance of RegressionSample!")
        if not isinstance(bandwidths, Bandwidths):
            bandwidths = Bandwidths(*bandwidths)
        self._sample = sample
        self._bandwidths = bandwidths
        self._predictor_kernel = make_kernel(
            bandwidths.predictor_smoothing, sample.predictor_is_circular)
        self._response_kernel = make_kernel(
            bandwidths.response_smoothing, sample.response_is_circular)

    def __repr__(self):
        return "ConditionalDensity of {} with {}".format(self.sample,
                                                          self.bandwidths)

    @property
    def bandwidths(self):
        return self._bandwidths

    @property
    def geometry(self):
        return self._sample.geometry

    @property
    def predictor_kernel(self):
        return self._predictor_kernel

    @property
    def response_kernel(self):
        return self._response_kernel

    @property
    def sample(self):
        return self._sample

    def predictor_weights(self, delta):
        """Unnormalized weights w_δ(Δ_j), one per observation"""
        delta = float(delta)
        if not np.isfinite(delta):
            raise ValueError("Predictor point must be finite!")
        return self._predictor_kernel.evaluate(delta - self._sample.predictors)

    def marginal_predictor(self, delta):
        """Kernel density estimate f̂(δ) = (1/n) Σ_j w_δ(Δ_j)"""
        return float(np.mean(self.predictor_weights(delta)))

    def normalized_weights(self, delta):
        """Predictor weights divided by their sum

        Raises
        ------
        LowSupportError
            If the predictor marginal at `delta` is below `TAU_DEN`.
        """
        w = self.predictor_weights(delta)
        marginal = np.mean(w)
        if not marginal > TAU_DEN:
            raise LowSupportError(
                "Predictor marginal at {:.6g} is {:.3e} (<= {:.0e}); "
                "the conditional density is undefined there.".format(
                    delta, marginal, TAU_DEN),
                point=delta)
        return w / np.sum(w)

    def conditional_eval(self, delta, r):
        """Conditional density f̂(r|δ) at response value(s) `r`

        Raises
        ------
        LowSupportError
            If the predictor marginal at `delta` is below `TAU_DEN`.
        """
        return self._kernel_sum(delta, r, 0)

    def conditional_deriv(self, delta, r, order=1):
        """Closed-form ∂^order/∂r^order f̂(r|δ), order 1 or 2"""
        if order not in (1, 2):
            raise ValueError("`order` must be 1 or 2, got {}!".format(order))
        return self._kernel_sum(delta, r, order)

    def _kernel_sum(self, delta, r, order):
        p = self.normalized_weights(delta)
        r = np.asarray(r, dtype=float)
        diff = r[..., np.newaxis] - self._sample.responses
        vals = self._response_kernel.derivative(diff, order=order)
        # pairwise summation
        out = np.sum(np.asarray(vals) * p, axis=-1)
        if out.ndim == 0:
            return float(out)
        return out

    def conditional_grid(self, delta, grid):
        """Conditional density on an array `grid` of response values"""
        return np.atleast_1d(self.conditional_eval(delta, np.asarray(grid)))
