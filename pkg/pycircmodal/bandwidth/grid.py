"""Search grids of smoothing pairs and tables of selection scores"""
import numpy as np

from ..density import Bandwidths

#: Default concentrations (κ for circular predictors or responses)
DEFAULT_CONCENTRATIONS = (1, 2, 5, 10, 20, 40, 80)
#: Default span of linear bandwidths relative to the interquartile range
DEFAULT_BANDWIDTH_SPAN = (0.05, 1.0)
#: Default number of linear bandwidths
DEFAULT_BANDWIDTH_COUNT = 7


def _check_axis(values, name):
    values = np.atleast_1d(np.asarray(values, dtype=float)).ravel()
    if values.size == 0:
        raise ValueError("`{}` must not be empty!".format(name))
    if not (np.all(np.isfinite(values)) and np.all(values > 0)):
        raise ValueError("`{}` must be positive and finite!".format(name))
    if values.size > 1 and not np.all(np.diff(values) > 0):
        raise ValueError("`{}` must be strictly increasing!".format(name))
    return values


class BandwidthGrid(object):
    """Cartesian grid of (predictor, response) smoothing values"""

    def __init__(self, predictor_values, response_values):
        self.predictor_values = _check_axis(predictor_values,
                                            "predictor_values")
        self.response_values = _check_axis(response_values,
                                           "response_values")

    def __repr__(self):
        return "BandwidthGrid(predictor={}, response={})".format(
            self.predictor_values.tolist(), self.response_values.tolist())

    def __len__(self):
        return self.predictor_values.size * self.response_values.size

    @property
    def shape(self):
        return (self.predictor_values.size, self.response_values.size)

    def cells(self):
        """List of (i, j, Bandwidths) in row-major order"""
        return [(ii, jj, Bandwidths(p, r))
                for ii, p in enumerate(self.predictor_values)
                for jj, r in enumerate(self.response_values)]


def _spread(values):
    q75, q25 = np.percentile(values, [75, 25])
    spread = q75 - q25
    if not spread > 0:
        spread = np.ptp(values)
    if not spread > 0:
        raise ValueError("Cannot derive a bandwidth grid from constant "
                         "values!")
    return spread


def linear_bandwidths(values, span=DEFAULT_BANDWIDTH_SPAN,
                      count=DEFAULT_BANDWIDTH_COUNT):
    """Logarithmically spaced bandwidths relative to the spread of data"""
    spread = _spread(values)
    return np.logspace(np.log10(span[0] * spread), np.log10(span[1] * spread),
                       count)


def default_grid(sample):
    """Default search grid for a sample

    Circular margins get `DEFAULT_CONCENTRATIONS`, linear margins
    `DEFAULT_BANDWIDTH_COUNT` logarithmically spaced bandwidths from
    0.05 to 1.0 times the interquartile range of the data.
    """
    if sample.predictor_is_circular:
        pred = DEFAULT_CONCENTRATIONS
    else:
        pred = linear_bandwidths(sample.predictors)
    if sample.response_is_circular:
        resp = DEFAULT_CONCENTRATIONS
    else:
        resp = linear_bandwidths(sample.responses)
    return BandwidthGrid(pred, resp)


def smoothness_order(values, circular):
    """Ranks of grid values from smoothest (0) to roughest

    Smaller concentrations and larger bandwidths smooth more.
    """
    values = np.asarray(values, dtype=float)
    order = np.argsort(values if circular else -values, kind="stable")
    ranks = np.empty(values.size, dtype=int)
    ranks[order] = np.arange(values.size)
    return ranks


class ScoreTable(object):
    """Selection scores of every cell of a `BandwidthGrid`"""

    def __init__(self, grid, scores, predictor_is_circular,
                 response_is_circular, method="cv"):
        scores = np.asarray(scores, dtype=float)
        if scores.shape != grid.shape:
            raise ValueError("Score shape {} does not match grid shape "
                             "{}!".format(scores.shape, grid.shape))
        self.grid = grid
        self.scores = scores
        self.predictor_is_circular = predictor_is_circular
        self.response_is_circular = response_is_circular
        self.method = method

    def __repr__(self):
        return "ScoreTable ({}, {}x{} cells)".format(self.method,
                                                     *self.grid.shape)

    def rows(self):
        """List of (predictor_smoothing, response_smoothing, score)"""
        return [(bw.predictor_smoothing, bw.response_smoothing,
                 float(self.scores[ii, jj]))
                for ii, jj, bw in self.grid.cells()]

    def best(self, rtol=1e-12):
        """Minimizing cell; ties go to the smoother pair

        Scores within `rtol` (relative) of the minimum are ties. Among
        ties the smoothest predictor value wins, then the smoothest
        response value.
        """
        finite = np.isfinite(self.scores)
        if not np.any(finite):
            raise ValueError("No finite score in table!")
        smin = np.min(self.scores[finite])
        tied = finite & (self.scores <= smin + rtol * max(1.0, abs(smin)))
        prank = smoothness_order(self.grid.predictor_values,
                                 self.predictor_is_circular)
        rrank = smoothness_order(self.grid.response_values,
                                 self.response_is_circular)
        candidates = [(prank[ii], rrank[jj], ii, jj)
                      for ii, jj in zip(*np.nonzero(tied))]
        _, _, ii, jj = min(candidates)
        return Bandwidths(self.grid.predictor_values[ii],
                          self.grid.response_values[jj])
