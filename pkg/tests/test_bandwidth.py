import numpy as np
import pytest
from scipy import integrate

from pycircmodal import bandwidth, meanshift, metrics, simulate
from pycircmodal.bandwidth import BandwidthGrid, ScoreTable
from pycircmodal.density import Bandwidths, RegressionSample
from pycircmodal.meanshift import MeanShiftConfig


def test_grid_validation():
    with pytest.raises(ValueError):
        BandwidthGrid([], [1])
    with pytest.raises(ValueError):
        BandwidthGrid([1, 0.5], [1])
    with pytest.raises(ValueError):
        BandwidthGrid([1, 2], [-1])
    grid = BandwidthGrid([1, 2, 3], [0.1, 0.2])
    assert grid.shape == (3, 2)
    assert len(grid) == 6
    assert grid.cells()[1] == (0, 1, Bandwidths(1, 0.2))


def test_default_grid():
    smp = simulate.draw(simulate.get_model(1001), 100, seed=1)
    grid = bandwidth.default_grid(smp)
    assert grid.predictor_values.tolist() == \
        list(bandwidth.DEFAULT_CONCENTRATIONS)
    q75, q25 = np.percentile(smp.responses, [75, 25])
    assert np.isclose(grid.response_values[0], 0.05 * (q75 - q25))
    assert np.isclose(grid.response_values[-1], q75 - q25)
    assert grid.response_values.size == 7
    smp = simulate.draw(simulate.get_model(2001), 100, seed=1)
    grid = bandwidth.default_grid(smp)
    assert grid.response_values.tolist() == \
        list(bandwidth.DEFAULT_CONCENTRATIONS)


def test_tie_goes_to_smoother_pair():
    grid = BandwidthGrid([5, 10], [0.3, 0.6])
    table = ScoreTable(grid, np.ones((2, 2)), predictor_is_circular=True,
                       response_is_circular=False)
    assert table.best() == Bandwidths(5, 0.6)
    # circular response: smaller concentration is smoother
    table = ScoreTable(grid, np.ones((2, 2)), predictor_is_circular=True,
                       response_is_circular=True)
    assert table.best() == Bandwidths(5, 0.3)
    # linear predictor: larger bandwidth is smoother
    table = ScoreTable(grid, np.ones((2, 2)), predictor_is_circular=False,
                       response_is_circular=True)
    assert table.best() == Bandwidths(10, 0.3)
    # a clear minimum wins
    table = ScoreTable(grid, [[1, 1], [0.5, 1]], predictor_is_circular=True,
                       response_is_circular=False)
    assert table.best() == Bandwidths(10, 0.3)
    rows = table.rows()
    assert rows[2] == (10.0, 0.3, 0.5)
    with pytest.raises(ValueError):
        ScoreTable(grid, np.ones(3), True, False)


def test_cv_insufficient_data():
    smp = RegressionSample("circ_lin", [0, 1], [0, 1])
    with pytest.raises(bandwidth.InsufficientDataError):
        bandwidth.modal_cv_score(smp, (1, 1))
    with pytest.raises(bandwidth.InsufficientDataError):
        bandwidth.select_by_cv(smp, BandwidthGrid([1], [1]))


def test_cv_exact_fit():
    rng = np.random.default_rng(61)
    x = rng.uniform(-np.pi, np.pi, 20)
    smp = RegressionSample("circ_lin", x, np.full(20, 1.5))
    assert np.isclose(bandwidth.modal_cv_score(smp, (2, 0.5)), 0,
                      atol=1e-20)
    smp = RegressionSample("circ_circ", x, np.full(20, 0.7))
    assert np.isclose(bandwidth.modal_cv_score(smp, (2, 5)), 0, atol=1e-12)


def test_cv_score_properties():
    smp = simulate.draw(simulate.get_model(1002), 40, seed=67)
    cfg = MeanShiftConfig(init="all")
    score = bandwidth.modal_cv_score(smp, (10, 0.5), cfg)
    assert score >= 0
    assert bandwidth.modal_cv_score(smp, (10, 0.5), cfg, workers=3) == score
    perm = np.random.default_rng(71).permutation(smp.n)
    assert np.isclose(bandwidth.modal_cv_score(smp.take(perm), (10, 0.5),
                                               cfg), score, rtol=1e-9)
    rotated = smp.rotate_predictors(0.9)
    assert np.isclose(bandwidth.modal_cv_score(rotated, (10, 0.5), cfg),
                      score, rtol=1e-9)


def test_select_single_cell():
    smp = simulate.draw(simulate.get_model(3001), 30, seed=73)
    best, table = bandwidth.select_by_cv(smp, BandwidthGrid([4], [8]),
                                         return_table=True)
    assert best == Bandwidths(4, 8)
    assert table.scores.shape == (1, 1)
    assert table.method == "cv"


def test_select_workers_deterministic():
    smp = simulate.draw(simulate.get_model(2002), 30, seed=79)
    grid = BandwidthGrid([0.2, 0.5], [2, 8])
    one = bandwidth.score_grid(smp, grid, workers=1)
    four = bandwidth.score_grid(smp, grid, workers=4)
    assert np.array_equal(one.scores, four.scores)
    assert one.best() == four.best()


def test_basis_partition_of_unity():
    basis = bandwidth.PeriodicBSplineBasis(8)
    theta = np.linspace(-np.pi, np.pi, 201)
    vals = basis(theta)
    assert vals.shape == (201, 8)
    assert np.all(vals >= 0)
    assert np.allclose(vals.sum(axis=1), 1, atol=1e-12)
    assert np.allclose(basis(theta + 2 * np.pi), vals, atol=1e-12)
    assert np.allclose(basis(np.pi), basis(-np.pi))
    design = basis.design(theta)
    assert design.shape == (201, 9)
    assert np.all(design[:, 0] == 1)
    with pytest.raises(ValueError):
        bandwidth.PeriodicBSplineBasis(3)


def test_pilot_geometry_and_size():
    smp = simulate.draw(simulate.get_model(2001), 200, seed=83)
    with pytest.raises(bandwidth.UnsupportedGeometryError):
        bandwidth.fit_mixture_pilot(smp)
    smp = simulate.draw(simulate.get_model(1001), 50, seed=83)
    with pytest.raises(bandwidth.InsufficientDataError):
        bandwidth.fit_mixture_pilot(smp)


@pytest.mark.filterwarnings(
    'ignore::pycircmodal.bandwidth.errors.DegenerateRestartWarning')
def test_pilot_unimodal():
    smp = simulate.draw(simulate.get_model(1001), 300, seed=89)
    pilot = bandwidth.fit_mixture_pilot(smp, seed=1)
    assert pilot.n_components == 1
    assert np.isclose(np.sum(pilot.weights), 1)
    assert pilot.sigma2 > 0
    theta = np.linspace(-3, 3, 13)
    assert np.allclose(pilot.means(theta)[:, 0], 2 * np.sin(theta),
                       atol=0.2)
    assert np.isclose(np.sqrt(pilot.sigma2), 0.3, atol=0.05)
    # single normal component: the mode is the mean
    modes = pilot.modes(0.5)
    assert modes.size == 1
    assert np.isclose(modes[0], pilot.means(0.5)[0, 0], atol=1e-6)
    total = integrate.quad(lambda y: pilot.conditional_density(y, 0.5),
                           -10, 10, points=[modes[0]])[0]
    assert np.isclose(total, 1, atol=1e-8)


@pytest.mark.filterwarnings(
    'ignore::pycircmodal.bandwidth.errors.DegenerateRestartWarning')
def test_pilot_bimodal():
    smp = simulate.draw(simulate.get_model(1002), 500, seed=97)
    pilot = bandwidth.fit_mixture_pilot(smp, seed=2)
    assert pilot.n_components == 2
    assert np.allclose(pilot.weights, 0.5, atol=0.1)
    means = pilot.means(np.array([0.0]))[0]
    assert np.allclose(means, [-1.2, 1.2], atol=0.2)
    assert pilot.modes(0.0).size == 2
    assert pilot.n_parameters == 2 * 9 + 2
    assert np.isclose(pilot.bic(), -2 * pilot.loglik
                      + pilot.n_parameters * np.log(500))


def test_pilot_draw_seeded():
    smp = simulate.draw(simulate.get_model(1001), 100, seed=101)
    pilot = bandwidth.fit_mixture_pilot(smp, max_components=1, seed=0)
    a = pilot.draw(smp.predictors, np.random.default_rng(5))
    b = pilot.draw(smp.predictors, np.random.default_rng(5))
    assert np.array_equal(a, b)
    assert a.shape == (100,)


def test_bootstrap_geometry():
    smp = simulate.draw(simulate.get_model(2002), 100, seed=103)
    with pytest.raises(bandwidth.UnsupportedGeometryError):
        bandwidth.bootstrap_ise(smp, BandwidthGrid([1], [1]), n_boot=2)


@pytest.mark.filterwarnings(
    'ignore::pycircmodal.bandwidth.errors.DegenerateRestartWarning')
def test_bootstrap_deterministic():
    smp = simulate.draw(simulate.get_model(1001), 100, seed=107)
    pilot = bandwidth.fit_mixture_pilot(smp, max_components=1, seed=0)
    grid = BandwidthGrid([5, 20], [0.2, 0.5])
    best1, table1 = bandwidth.bootstrap_ise(smp, grid, pilot, n_boot=2,
                                            seed=11, workers=1)
    best2, table2 = bandwidth.bootstrap_ise(smp, grid, pilot, n_boot=2,
                                            seed=11, workers=2)
    assert np.array_equal(table1.scores, table2.scores)
    assert best1 == best2
    assert table1.method == "bootstrap"
    assert np.all(table1.scores >= 0)
    with pytest.raises(ValueError):
        bandwidth.bootstrap_ise(smp, grid, pilot, n_boot=0)


@pytest.mark.slow
@pytest.mark.filterwarnings(
    'ignore::pycircmodal.bandwidth.errors.DegenerateRestartWarning')
def test_pilot_bic_picks_single_component():
    hits = 0
    for seed in range(20):
        smp = simulate.draw(simulate.get_model(1001), 200, seed=seed)
        hits += bandwidth.fit_mixture_pilot(smp, seed=seed).n_components == 1
    assert hits >= 18


@pytest.mark.slow
@pytest.mark.filterwarnings(
    'ignore::pycircmodal.bandwidth.errors.DegenerateRestartWarning')
def test_pilot_bic_picks_two_components():
    hits = 0
    for seed in range(20):
        smp = simulate.draw(simulate.get_model(1002), 500, seed=seed)
        hits += bandwidth.fit_mixture_pilot(smp, seed=seed).n_components == 2
    assert hits >= 16


def circular_mesh(size=32):
    return -np.pi + 2 * np.pi * np.arange(1, size + 1) / size


def grid_index(grid, bw):
    return (int(np.argmin(np.abs(grid.predictor_values
                                 - bw.predictor_smoothing))),
            int(np.argmin(np.abs(grid.response_values
                                 - bw.response_smoothing))))


def global_errors(smp, grid, truth):
    """Empirical global error of every grid cell against `truth`"""
    errors = np.full(grid.shape, np.inf)
    for ii, jj, bw in grid.cells():
        mf = meanshift.fit_multifunction(smp, bw, truth.mesh)
        try:
            errors[ii, jj] = metrics.empirical_global_error(truth, mf).value
        except metrics.UndefinedDistanceError:
            pass
    return errors


@pytest.mark.slow
@pytest.mark.filterwarnings('ignore::pycircmodal.meanshift.EmptyBranchWarning')
def test_cv_selection_resolves_both_branches():
    grid = BandwidthGrid([5, 20, 80], [0.1, 0.4, 1.6])
    hits = 0
    for seed in range(20):
        smp = simulate.draw(simulate.get_model(1002), 500, seed=200 + seed)
        best = bandwidth.select_by_cv(smp, grid, workers=None)
        mf = meanshift.fit_multifunction(smp, best, circular_mesh())
        hits += np.mean(mf.branch_counts() == 2) >= 0.8
    assert hits >= 14


@pytest.mark.slow
@pytest.mark.filterwarnings('ignore::pycircmodal.meanshift.EmptyBranchWarning')
def test_cv_selection_beats_grid_median():
    model = simulate.get_model(1002)
    grid = BandwidthGrid([2, 5, 15, 40, 120], [0.05, 0.15, 0.4, 1.0, 2.5])
    truth = simulate.oracle_multifunction(model, circular_mesh())
    hits = 0
    for seed in range(20):
        smp = simulate.draw(model, 150, seed=300 + seed)
        best = bandwidth.select_by_cv(smp, grid, workers=None)
        errors = global_errors(smp, grid, truth)
        hits += errors[grid_index(grid, best)] <= np.median(errors)
    assert hits >= 12


@pytest.mark.slow
@pytest.mark.filterwarnings(
    'ignore::pycircmodal.bandwidth.errors.DegenerateRestartWarning')
@pytest.mark.filterwarnings('ignore::pycircmodal.meanshift.EmptyBranchWarning')
def test_bootstrap_agrees_with_cv():
    grid = BandwidthGrid([5, 20, 80], [0.1, 0.4, 1.6])
    agree = 0
    for seed in range(20):
        smp = simulate.draw(simulate.get_model(1002), 200, seed=400 + seed)
        cv_index = grid_index(grid, bandwidth.select_by_cv(smp, grid,
                                                          workers=None))
        best, _ = bandwidth.bootstrap_ise(smp, grid, n_boot=20, seed=seed,
                                          workers=None)
        bs_index = grid_index(grid, best)
        agree += (abs(cv_index[0] - bs_index[0]) <= 1
                  and abs(cv_index[1] - bs_index[1]) <= 1)
    assert agree >= 10


@pytest.mark.slow
@pytest.mark.filterwarnings(
    'ignore::pycircmodal.bandwidth.errors.DegenerateRestartWarning')
@pytest.mark.filterwarnings('ignore::pycircmodal.meanshift.EmptyBranchWarning')
def test_bootstrap_penalizes_merged_branches():
    model = simulate.get_model(1002)
    # the last response bandwidth merges the branches
    grid = BandwidthGrid([20], [0.2, 0.4, 2.5])
    truth = simulate.oracle_multifunction(model, circular_mesh())
    hits = 0
    for seed in range(20):
        smp = simulate.draw(model, 200, seed=500 + seed)
        oracle_best = np.unravel_index(
            np.argmin(global_errors(smp, grid, truth)), grid.shape)
        _, table = bandwidth.bootstrap_ise(smp, grid, n_boot=20, seed=seed,
                                           workers=None)
        hits += table.scores[0, 2] > table.scores[oracle_best]
    assert hits >= 16


if __name__ == "__main__":
    # Run all tests
    loc = locals()
    for key in list(loc.keys()):
        if key.startswith("test_") and hasattr(loc[key], "__call__"):
            loc[key]()
