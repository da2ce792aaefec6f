import numpy as np
import pytest

from pycircmodal import circular, meanshift, metrics, simulate
from pycircmodal.simulate import Branch, SimModel


def test_registry():
    for modelid in (1001, 1002, 1003, 1004, 2001, 2002, 3001, 3002):
        assert simulate.get_model(modelid).id == modelid
    assert simulate.get_model("1002").geometry == "circ_lin"
    with pytest.raises(ValueError):
        simulate.get_model(9999)
    with pytest.raises(ValueError):
        simulate.model_setup(1001, "duplicate", "circ_lin",
                             [{"function": "0", "weight": 1,
                               "dispersion": 1}])


def test_branch_function():
    branch = Branch("2*sin(x) + 1", 1, 0.5)
    x = np.linspace(-3, 3, 7)
    assert np.allclose(branch(x), 2 * np.sin(x) + 1)
    const = Branch("pi/2", 1, 0.5)
    assert np.allclose(const(x), np.pi / 2)
    assert const(x).shape == x.shape
    with pytest.raises(ValueError, match="function"):
        Branch("2*y", 1, 0.5)
    with pytest.raises(ValueError, match="function"):
        Branch("sin(x", 1, 0.5)
    with pytest.raises(ValueError, match="weight"):
        Branch("x", 0, 0.5)
    with pytest.raises(ValueError, match="dispersion"):
        Branch("x", 1, -0.5)


def test_model_validation():
    with pytest.raises(ValueError):
        SimModel("circ_lin", [Branch("sin(x)", 0.5, 1)])
    with pytest.raises(ValueError, match="periodic"):
        SimModel("circ_lin", [Branch("x", 1, 1)])
    # congruent modulo 2π is enough for a circular response
    SimModel("circ_circ", [Branch("x", 1, 1)])
    with pytest.raises(ValueError, match="predictor"):
        SimModel("lin_circ", [Branch("x", 1, 1)])
    with pytest.raises(ValueError, match="predictor"):
        SimModel("lin_circ", [Branch("x", 1, 1)],
                 predictor={"law": "uniform", "low": 1, "high": 0})
    with pytest.raises(ValueError):
        SimModel("circ_lin", [])


def test_model_dict():
    model = simulate.get_model(1002)
    data = model.to_dict()
    again = SimModel.from_dict(data)
    assert again.geometry == model.geometry
    assert [b.expression for b in again.branches] == \
        [b.expression for b in model.branches]
    assert np.array_equal(again.weights, model.weights)
    assert np.array_equal(again.dispersions, model.dispersions)
    with pytest.raises(ValueError, match="branches"):
        SimModel.from_dict({"geometry": "circ_lin"})
    with pytest.raises(ValueError, match="dispersion"):
        SimModel.from_dict({"geometry": "circ_lin",
                            "branches": [{"function": "0", "weight": 1}]})


def test_draw_seeded():
    model = simulate.get_model(1002)
    a = simulate.draw(model, 50, seed=3)
    b = simulate.draw(model, 50, seed=3)
    c = simulate.draw(model, 50, seed=4)
    assert a == b
    assert not np.array_equal(a.responses, c.responses)
    assert a.geometry == "circ_lin"
    assert np.all(a.predictors > -np.pi)
    assert np.all(a.predictors <= np.pi)


def test_draw_without_noise():
    model = SimModel("circ_lin", [Branch("2*sin(x)", 1, 0)])
    smp = simulate.draw(model, 100, seed=1)
    assert np.array_equal(smp.responses, 2 * np.sin(smp.predictors))
    model = SimModel("lin_circ", [Branch("3*x", 1, np.inf)],
                     predictor={"law": "uniform", "low": -2, "high": 2})
    smp = simulate.draw(model, 100, seed=1)
    assert np.allclose(np.cos(smp.responses - 3 * smp.predictors), 1)
    assert np.all(smp.predictors >= -2)
    assert np.all(smp.predictors < 2)


def test_draw_proportions():
    model = SimModel("circ_lin", [Branch("1", 0.3, 0.1),
                                  Branch("-1", 0.7, 0.1)])
    _, labels = simulate.draw(model, 10000, seed=5, return_labels=True)
    assert abs(np.mean(labels == 0) - 0.3) < 0.02


def test_oracle_single_normal():
    model = SimModel("circ_lin", [Branch("2*sin(x)", 1, 0.3)])
    for delta in (-2.0, 0.0, 1.0):
        modes = simulate.oracle_modes(model, delta)
        assert len(modes) == 1
        assert np.isclose(modes.values[0], 2 * np.sin(delta), atol=1e-6)


def test_oracle_von_mises_pair():
    model = SimModel("lin_circ", [Branch("pi/2", 0.5, 5),
                                  Branch("-pi/2", 0.5, 5)],
                     predictor={"law": "uniform", "low": 0, "high": 1})
    modes = simulate.oracle_modes(model, 0.5)
    assert np.allclose(modes.values, [-np.pi / 2, np.pi / 2], atol=1e-6)


def test_oracle_close_branches_merge():
    model = SimModel("circ_lin", [Branch("0.4", 0.5, 0.5),
                                  Branch("-0.4", 0.5, 0.5)])
    modes = simulate.oracle_modes(model, 0.0)
    assert len(modes) == 1
    assert np.isclose(modes.values[0], 0, atol=1e-6)
    # well separated branches stay apart
    model = SimModel("circ_lin", [Branch("2", 0.5, 0.5),
                                  Branch("-2", 0.5, 0.5)])
    assert len(simulate.oracle_modes(model, 0.0)) == 2


def test_oracle_rotation():
    base = SimModel("circ_circ", [Branch("x", 0.5, 8),
                                  Branch("x + pi", 0.5, 8)])
    shifted = SimModel("circ_circ", [Branch("x + 0.5", 0.5, 8),
                                     Branch("x + pi + 0.5", 0.5, 8)])
    for delta in (-1.0, 2.0):
        a = simulate.oracle_modes(base, delta).values
        b = simulate.oracle_modes(shifted, delta).values
        assert a.size == b.size == 2
        rotated = np.sort(circular.wrap(a + 0.5))
        for val in rotated:
            assert np.min(np.abs(circular.angular_difference(val, b))) < 1e-6


def test_oracle_arguments():
    model = simulate.get_model(1001)
    with pytest.raises(ValueError):
        simulate.oracle_modes(model, 0.0, grid_size=100)
    noiseless = SimModel("circ_lin", [Branch("sin(x)", 1, 0)])
    with pytest.raises(ValueError):
        simulate.oracle_modes(noiseless, 0.0)


def test_oracle_multifunction():
    model = simulate.get_model(3002)
    mesh = np.linspace(-3, 3, 5)
    mf = simulate.oracle_multifunction(model, mesh, grid_size=1024)
    assert len(mf) == 5
    assert mf.branch_counts().tolist() == [2] * 5
    assert mf.geometry == "circ_circ"
    for delta, modes in zip(mf.mesh, mf.branches):
        center = delta + np.sin(delta) / 2
        for val in modes:
            assert min(abs(circular.angular_difference(val, center)),
                       abs(circular.angular_difference(val, center + np.pi))
                       ) < 1e-6


def test_grid_modes_periodic():
    def dens(y):
        return np.exp(np.cos(y - np.pi))
    modes = simulate.grid_modes(dens, -np.pi, np.pi, 1000, periodic=True)
    assert modes.size == 1
    assert np.isclose(abs(modes[0]), np.pi, atol=1e-6)


@pytest.mark.slow
@pytest.mark.filterwarnings('ignore::pycircmodal.meanshift.EmptyBranchWarning')
def test_fitted_branches_converge_to_truth():
    model = SimModel("circ_lin",
                     [{"function": "sin(x) + 1.2", "weight": 0.5,
                       "dispersion": 0.05},
                      {"function": "sin(x) - 1.2", "weight": 0.5,
                       "dispersion": 0.05}])
    mesh = -np.pi + 2 * np.pi * np.arange(1, 33) / 32
    truth = simulate.oracle_multifunction(model, mesh)
    medians = {}
    for n in (100, 1600):
        # smoothing shrinks with the sample size
        kappa = 20 * (n / 100)**0.4
        h = 0.25 * (n / 100)**-0.25
        errors = []
        for seed in range(10):
            smp = simulate.draw(model, n, seed=seed)
            mf = meanshift.fit_multifunction(smp, (kappa, h), truth.mesh)
            for ii in range(len(truth)):
                try:
                    errors.append(metrics.pointwise_error(truth, mf, ii))
                except metrics.UndefinedDistanceError:
                    pass
        medians[n] = np.median(errors)
    assert medians[1600] <= 0.5 * medians[100]


if __name__ == "__main__":
    # Run all tests
    loc = locals()
    for key in list(loc.keys()):
        if key.startswith("test_") and hasattr(loc[key], "__call__"):
            loc[key]()
