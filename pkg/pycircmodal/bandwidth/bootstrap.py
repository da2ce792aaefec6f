"""Parametric bootstrap estimate of the modal integrated squared error

Resamples keep the observed predictors and draw responses from the
pilot conditional density. The pilot modes at the observed predictors
serve as surrogate truth:

    ISE*(bw) = (1/B) Σ_b (1/n) Σ_j Haus²(M̂*(b)(Θ_j), M̃(Θ_j))
"""
import numpy as np

from ..density import ConditionalDensity
from ..meanshift import MeanShiftConfig, fit_point
from ..metrics import empty_branch_penalty, hausdorff
from ..parallel import map_ordered
from .errors import UnsupportedGeometryError
from .grid import ScoreTable, default_grid
from .pilot import MixturePilot, fit_mixture_pilot

#: Default number of bootstrap resamples
DEFAULT_BOOT_B = 100


def _replicate_scores(sample, grid, pilot, truth, seed_seq, cfg, penalty):
    rng = np.random.default_rng(seed_seq)
    boot = sample.with_responses(pilot.draw(sample.predictors, rng))
    scores = np.zeros(grid.shape)
    for ii, jj, bw in grid.cells():
        est = ConditionalDensity(boot, bw)
        total = 0.0
        for delta, true_modes in zip(sample.predictors, truth):
            modes = fit_point(est, delta, cfg, warn=False).modes
            if modes.size == 0:
                total += penalty
            else:
                total += hausdorff(true_modes, modes)**2
        scores[ii, jj] = total / sample.n
    return scores


def bootstrap_ise(sample, grid=None, pilot=None, n_boot=DEFAULT_BOOT_B,
                  cfg=None, seed=None, workers=1):
    """Smoothing pair minimizing the bootstrap modal ISE

    Parameters
    ----------
    sample : RegressionSample
        A "circ_lin" sample.
    grid : BandwidthGrid
        Search grid; `default_grid(sample)` if None.
    pilot : MixturePilot
        Pilot conditional density; if None it is fitted with
        `fit_mixture_pilot(sample, seed=seed)`.
    n_boot : int
        Number of resamples B.
    cfg : MeanShiftConfig
        Mean shift options.
    seed : int or None
        Root seed; replicate b draws from the b-th child of
        `numpy.random.SeedSequence(seed)`.
    workers : int or None
        Number of threads over replicates.

    Returns
    -------
    bandwidths : Bandwidths
        Minimizing grid cell (ties go to the smoother pair).
    table : ScoreTable
        Average score of every grid cell.

    Notes
    -----
    Resampled fits with an empty branch set contribute
    `metrics.empty_branch_penalty(sample)`.
    """
    if sample.geometry != "circ_lin":
        raise UnsupportedGeometryError(
            "Bootstrap bandwidth selection supports 'circ_lin' samples "
            "only, got '{}'; use modal cross-validation (method "
            "'cv').".format(sample.geometry))
    n_boot = int(n_boot)
    if n_boot < 1:
        raise ValueError("`n_boot` must be at least 1, got {}!".format(
            n_boot))
    if grid is None:
        grid = default_grid(sample)
    if cfg is None:
        cfg = MeanShiftConfig()
    if pilot is None:
        pilot = fit_mixture_pilot(sample, seed=seed)
    if not isinstance(pilot, MixturePilot):
        raise ValueError("`pilot` must be instance of MixturePilot!")

    truth = [pilot.modes(delta) for delta in sample.predictors]
    penalty = empty_branch_penalty(sample)
    children = np.random.SeedSequence(seed).spawn(n_boot)
    per_replicate = map_ordered(
        lambda ss: _replicate_scores(sample, grid, pilot, truth, ss, cfg,
                                     penalty),
        children, workers=workers)
    table = ScoreTable(grid, np.mean(per_replicate, axis=0),
                       predictor_is_circular=True,
                       response_is_circular=False,
                       method="bootstrap")
    return table.best(), table
