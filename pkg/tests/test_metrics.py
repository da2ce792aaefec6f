import numpy as np
import pytest

from pycircmodal import metrics, simulate
from pycircmodal.density import RegressionSample
from pycircmodal.meanshift import ModalMultifunction, fit_multifunction


def test_hausdorff_examples():
    assert metrics.hausdorff([0, 3], [1]) == 2
    assert metrics.hausdorff([1], [0, 3]) == 2
    assert metrics.hausdorff([0.5], [0.5]) == 0
    assert metrics.hausdorff([0, 1, 2], [0, 1, 2.5]) == 0.5


def test_circular_hausdorff_examples():
    assert np.isclose(metrics.circular_hausdorff([0], [np.pi]), 2)
    assert np.isclose(metrics.circular_hausdorff([0, np.pi / 2],
                                                 [np.pi / 2]), 1)
    # wrap-around neighbors are close
    assert metrics.circular_hausdorff([np.pi - 0.01],
                                      [-np.pi + 0.01]) < 1e-3
    # not a function of the raw difference
    assert np.isclose(metrics.circular_hausdorff([0.1], [0.1 + 2 * np.pi]),
                      0, atol=1e-14)


def test_empty_set():
    with pytest.raises(metrics.UndefinedDistanceError):
        metrics.hausdorff([], [1])
    with pytest.raises(metrics.UndefinedDistanceError):
        metrics.circular_hausdorff([0.0], [])


def random_sets(rng, circ):
    sets = []
    for _ in range(3):
        size = rng.integers(1, 6)
        if circ:
            sets.append(rng.uniform(-np.pi, np.pi, size))
        else:
            sets.append(rng.normal(0, 2, size))
    return sets


def check_metric_axioms(rng, count):
    for circ, dist in ((False, metrics.hausdorff),
                       (True, metrics.circular_hausdorff)):
        for _ in range(count):
            a, b, c = random_sets(rng, circ)
            dab = dist(a, b)
            assert dab >= 0
            assert dab == dist(b, a)
            assert dist(a, a) == 0
            if not circ:
                # 1 - cos is not a metric, only the real variant obeys
                # the triangle inequality
                assert dab <= dist(a, c) + dist(c, b) + 1e-12
            else:
                assert dab <= 2


def test_metric_axioms():
    check_metric_axioms(np.random.default_rng(47), 500)


@pytest.mark.slow
def test_metric_axioms_many():
    check_metric_axioms(np.random.default_rng(48), 10000)


def test_growth_bound():
    rng = np.random.default_rng(53)
    for circ, dist in ((False, metrics.hausdorff),
                       (True, metrics.circular_hausdorff)):
        for _ in range(500):
            a, b, _ = random_sets(rng, circ)
            extra = a[0] + rng.normal(0, 3)
            if circ:
                extra_dist = np.min(1 - np.cos(extra - b))
            else:
                extra_dist = np.min(np.abs(extra - b))
            grown = dist(np.append(a, extra), b)
            assert grown <= max(dist(a, b), extra_dist) + 1e-12


def check_rotation_invariance(rng, count):
    for _ in range(count):
        a, b, _ = random_sets(rng, True)
        alpha = rng.uniform(-10, 10)
        assert np.isclose(metrics.circular_hausdorff(a, b),
                          metrics.circular_hausdorff(a + alpha, b + alpha),
                          rtol=0, atol=1e-12)


def test_circular_rotation_invariance():
    check_rotation_invariance(np.random.default_rng(59), 200)


@pytest.mark.slow
def test_circular_rotation_invariance_many():
    check_rotation_invariance(np.random.default_rng(60), 10000)


def test_distance_to_set():
    assert metrics.distance_to_set(2.0, [0.0, 3.0], False) == 1.0
    assert np.isclose(metrics.distance_to_set(0.0, [np.pi, np.pi / 2],
                                              True), 1)


def test_empty_branch_penalty():
    smp = RegressionSample("circ_lin", [0, 1, 2], [-1.0, 0.5, 2.0])
    assert metrics.empty_branch_penalty(smp) == 18.0
    smp = RegressionSample("circ_circ", [0, 1, 2], [-1.0, 0.5, 2.0])
    assert metrics.empty_branch_penalty(smp) == 2.0


def test_empty_branch_penalty_constant_responses():
    smp = RegressionSample("circ_lin", [0, 1, 2], [3.0, 3.0, 3.0])
    assert metrics.empty_branch_penalty(smp) == 18.0
    smp = RegressionSample("circ_lin", [0, 1, 2], [0.0, 0.0, 0.0])
    assert metrics.empty_branch_penalty(smp) == 2.0
    # an empty fold can never score better than a perfect fit
    assert metrics.empty_branch_penalty(smp) > 0


def constant_pair(shift, circ=False, size=8):
    geometry = "circ_circ" if circ else "circ_lin"
    mesh = np.linspace(-3, 3, size)
    truth = ModalMultifunction(geometry, mesh, [[0.0]] * size)
    est = ModalMultifunction(geometry, mesh, [[shift]] * size)
    return truth, est


def test_pointwise_error():
    mesh = [0.0, 1.0]
    truth = ModalMultifunction("circ_lin", mesh, [[0.0, 3.0], [1.0]])
    est = ModalMultifunction("circ_lin", mesh, [[1.0], [1.0]])
    assert metrics.pointwise_error(truth, est, 0) == 2
    assert metrics.pointwise_error(truth, est, 1) == 0


def test_global_error_constant_shift():
    truth, est = constant_pair(0.7)
    res = metrics.empirical_global_error(truth, est)
    assert np.isclose(res.value, 0.49)
    assert res.n_undefined == 0
    truth, est = constant_pair(np.pi / 2, circ=True)
    res = metrics.empirical_global_error(truth, est)
    assert np.isclose(res.value, 1)


def test_global_error_single_disagreement():
    size = 16
    mesh = np.linspace(-3, 3, size)
    branches = [[1.0]] * size
    true_branches = list(branches)
    true_branches[5] = [0.0, 3.0]
    truth = ModalMultifunction("circ_lin", mesh, true_branches)
    est = ModalMultifunction("circ_lin", mesh, branches)
    res = metrics.empirical_global_error(truth, est)
    assert np.isclose(res.value, 4 / size)


def test_global_error_undefined():
    mesh = [0.0, 1.0, 2.0]
    truth = ModalMultifunction("circ_lin", mesh, [[0.0], [], [0.0]])
    est = ModalMultifunction("circ_lin", mesh, [[1.0], [1.0], [0.5]])
    with pytest.raises(metrics.UndefinedDistanceError) as exc:
        metrics.pointwise_error(truth, est, 1)
    assert exc.value.mesh_index == 1
    res = metrics.empirical_global_error(truth, est)
    assert res.n_undefined == 1
    assert np.isclose(res.value, (1 + 0.25) / 2)
    assert np.isnan(res.pointwise[1])

    est = ModalMultifunction("circ_lin", mesh, [[], [], []])
    with pytest.raises(metrics.UndefinedDistanceError):
        metrics.empirical_global_error(truth, est)


def test_mesh_mismatch():
    truth = ModalMultifunction("circ_lin", [0.0, 1.0, 2.0], [[0.0]] * 3)
    est = ModalMultifunction("circ_lin", [0.0, 1.0, 2.5], [[0.0]] * 3)
    with pytest.raises(ValueError, match="index 2"):
        metrics.empirical_global_error(truth, est)
    est = ModalMultifunction("circ_circ", [0.0, 1.0, 2.0], [[0.0]] * 3)
    with pytest.raises(ValueError):
        metrics.empirical_global_error(truth, est)


def model_mesh(model, size=32):
    if model.predictor_is_circular:
        return -np.pi + 2 * np.pi * np.arange(1, size + 1) / size
    return np.linspace(-1.2, 1.2, size)


def tuned_median_error(model, n, grid, seeds):
    """Smallest median global error over a bandwidth grid"""
    truth = simulate.oracle_multifunction(model, model_mesh(model))
    errors = np.full((len(grid), len(seeds)), np.inf)
    for kk, seed in enumerate(seeds):
        smp = simulate.draw(model, n, seed=seed)
        for ii, bw in enumerate(grid):
            mf = fit_multifunction(smp, bw, truth.mesh)
            try:
                errors[ii, kk] = metrics.empirical_global_error(truth,
                                                                mf).value
            except metrics.UndefinedDistanceError:
                pass
    return np.min(np.median(errors, axis=1))


@pytest.mark.slow
@pytest.mark.filterwarnings('ignore::pycircmodal.meanshift.EmptyBranchWarning')
def test_global_error_decreases_with_sample_size():
    setups = ((1002, (10, 25, 60, 150), (0.1, 0.2, 0.4)),
              (2002, (0.05, 0.1, 0.2, 0.4), (10, 25, 60)),
              (3002, (10, 25, 60, 150), (10, 25, 60)))
    for modelid, pred_values, resp_values in setups:
        model = simulate.get_model(modelid)
        grid = [(p, r) for p in pred_values for r in resp_values]
        medians = [tuned_median_error(model, n, grid, range(20))
                   for n in (100, 400, 1600)]
        assert medians[0] > medians[1] > medians[2], (modelid, medians)


@pytest.mark.slow
@pytest.mark.filterwarnings('ignore::pycircmodal.meanshift.EmptyBranchWarning')
def test_pointwise_error_decreases_with_sample_size():
    model = simulate.get_model(1002)
    truth = simulate.oracle_multifunction(model, model_mesh(model, 8))
    mean_error = {}
    for n in (100, 500):
        errors = []
        for seed in range(50):
            smp = simulate.draw(model, n, seed=1000 + seed)
            mf = fit_multifunction(smp, (20, 0.3), truth.mesh)
            for ii in range(len(truth)):
                try:
                    errors.append(metrics.pointwise_error(truth, mf, ii))
                except metrics.UndefinedDistanceError:
                    pass
        mean_error[n] = np.mean(errors)
    assert mean_error[500] < mean_error[100]


if __name__ == "__main__":
    # Run all tests
    loc = locals()
    for key in list(loc.keys()):
        if key.startswith("test_") and hasattr(loc[key], "__call__"):
            loc[key]()
