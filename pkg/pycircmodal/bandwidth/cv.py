"""Modal cross-validation

For every observation i the branch set at its predictor value is
estimated from the sample without observation i. The score averages
the distance of the left-out response to that set, multiplied by the
squared number of branches:

    CV = (1/n) Σ_i d(M̂_{-i}(Δ_i), R_i) N²_{-i}(Δ_i)

with d the squared distance to the set (real response) or the cosine
dissimilarity to the set (circular response). The factor N² punishes
spurious modes of undersmoothed fits.
"""
import numpy as np

from ..density import Bandwidths, ConditionalDensity
from ..meanshift import MeanShiftConfig, fit_point
from ..metrics import distance_to_set, empty_branch_penalty
from ..parallel import map_ordered
from .errors import InsufficientDataError
from .grid import ScoreTable, default_grid


def _fold_term(sample, bandwidths, index, cfg, penalty):
    train = sample.drop(index)
    est = ConditionalDensity(train, bandwidths)
    branches = fit_point(est, sample.predictors[index], cfg, warn=False)
    if branches.modes.size == 0:
        return penalty
    dist = distance_to_set(sample.responses[index], branches.modes,
                           sample.response_is_circular)
    return dist * branches.modes.size**2


def modal_cv_score(sample, bandwidths, cfg=None, workers=1):
    """Leave-one-out modal cross-validation score

    Parameters
    ----------
    sample : RegressionSample
        At least three observations.
    bandwidths : Bandwidths or tuple of two floats
        Smoothing pair to score.
    cfg : MeanShiftConfig
        Mean shift options; defaults to `MeanShiftConfig()`.
    workers : int or None
        Number of threads used for the folds.

    Returns
    -------
    score : float
        Non-negative score; folds with an empty branch set contribute
        `metrics.empty_branch_penalty(sample)`.
    """
    if sample.n < 3:
        raise InsufficientDataError("Modal cross-validation needs at least "
                                    "3 observations, got {}!".format(sample.n))
    if not isinstance(bandwidths, Bandwidths):
        bandwidths = Bandwidths(*bandwidths)
    if cfg is None:
        cfg = MeanShiftConfig()
    penalty = empty_branch_penalty(sample)
    terms = map_ordered(
        lambda ii: _fold_term(sample, bandwidths, ii, cfg, penalty),
        range(sample.n), workers=workers)
    return float(np.mean(terms))


def score_grid(sample, grid=None, cfg=None, workers=1):
    """Modal cross-validation score of every grid cell

    Grid cells are distributed over `workers` threads.

    Returns
    -------
    table : ScoreTable
    """
    if grid is None:
        grid = default_grid(sample)
    if sample.n < 3:
        raise InsufficientDataError("Modal cross-validation needs at least "
                                    "3 observations, got {}!".format(sample.n))
    cells = grid.cells()
    values = map_ordered(lambda cell: modal_cv_score(sample, cell[2], cfg),
                         cells, workers=workers)
    scores = np.zeros(grid.shape)
    for (ii, jj, _), val in zip(cells, values):
        scores[ii, jj] = val
    return ScoreTable(grid, scores,
                      predictor_is_circular=sample.predictor_is_circular,
                      response_is_circular=sample.response_is_circular,
                      method="cv")


def select_by_cv(sample, grid=None, cfg=None, workers=1, return_table=False):
    """Smoothing pair minimizing the modal cross-validation score

    Parameters
    ----------
    sample : RegressionSample
        The data.
    grid : BandwidthGrid
        Search grid; `default_grid(sample)` if None.
    cfg : MeanShiftConfig
        Mean shift options.
    workers : int or None
        Number of threads.
    return_table : bool
        Also return the full `ScoreTable`.

    Returns
    -------
    bandwidths : Bandwidths
        The minimizing grid cell; ties go to the smoother pair
        (smaller concentration, larger bandwidth).
    table : ScoreTable
        Only if `return_table`.
    """
    table = score_grid(sample, grid, cfg, workers)
    best = table.best()
    if return_table:
        return best, table
    return best
