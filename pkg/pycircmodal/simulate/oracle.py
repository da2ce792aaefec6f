"""Brute-force conditional modes of known densities

The true conditional density of a simulation model at a predictor
value is a finite mixture of normal or von Mises components. Its
local maxima are located on a dense response grid and refined with a
bounded scalar optimizer (parabolic interpolation with golden-section
safeguard) between the neighboring grid points.
"""
import numpy as np
from scipy import optimize, stats

from .. import circular
from ..meanshift import ModalMultifunction
from ..metrics import ModeSet

#: Default number of grid points for brute-force mode search
ORACLE_GRID_SIZE = 4096
#: Smallest allowed grid
MIN_GRID_SIZE = 512


def grid_modes(density, low=-np.pi, high=np.pi, grid_size=ORACLE_GRID_SIZE,
               periodic=False, xatol=1e-10):
    """Local maxima of a univariate function by dense grid search

    Parameters
    ----------
    density : callable
        Vectorized function of the response.
    low, high : float
        Search interval; for `periodic` functions one period.
    grid_size : int
        Number of grid points.
    periodic : bool
        Treat the interval as a circle (the first and the last grid
        point are neighbors); results are wrapped to (-π, π].
    xatol : float
        Absolute tolerance of the refinement.

    Returns
    -------
    modes : ndarray
        Sorted refined locations of the grid local maxima. For
        non-periodic functions only interior grid points count.
    """
    grid_size = int(grid_size)
    if grid_size < 3:
        raise ValueError("`grid_size` must be at least 3!")
    if periodic:
        grid = np.linspace(low, high, grid_size, endpoint=False)
    else:
        grid = np.linspace(low, high, grid_size)
    step = grid[1] - grid[0]
    vals = np.asarray(density(grid), dtype=float)
    if periodic:
        prev = np.roll(vals, 1)
        nxt = np.roll(vals, -1)
        ismax = (vals > prev) & (vals >= nxt)
    else:
        ismax = np.zeros(grid_size, dtype=bool)
        ismax[1:-1] = (vals[1:-1] > vals[:-2]) & (vals[1:-1] >= vals[2:])
    modes = []
    for ii in np.flatnonzero(ismax):
        center = grid[ii]
        res = optimize.minimize_scalar(
            lambda y: -float(np.asarray(density(np.array([y])))[0]),
            bounds=(center - step, center + step),
            method="bounded",
            options={"xatol": xatol})
        best = res.x if -res.fun >= vals[ii] else center
        modes.append(best)
    modes = np.array(modes, dtype=float)
    if periodic and modes.size:
        modes = np.atleast_1d(circular.wrap(modes))
    return np.sort(modes)


def conditional_density(model, delta, y):
    """True conditional density f(y|δ) of a simulation model"""
    y = np.asarray(y, dtype=float)
    centers = model.branch_values(delta)[0]
    out = np.zeros_like(y)
    for branch, center in zip(model.branches, centers):
        disp = branch.dispersion
        if not (np.isfinite(disp) and disp > 0):
            raise ValueError("The conditional density of {} needs finite, "
                             "positive dispersions!".format(model))
        if model.response_is_circular:
            comp = stats.vonmises.pdf(y, disp, loc=center)
        else:
            comp = stats.norm.pdf(y, loc=center, scale=disp)
        out = out + branch.weight * comp
    return out


def oracle_modes(model, delta, grid_size=ORACLE_GRID_SIZE):
    """Conditional modes of a simulation model at predictor value δ

    Returns
    -------
    modes : ModeSet
    """
    grid_size = int(grid_size)
    if grid_size < MIN_GRID_SIZE:
        raise ValueError("`grid_size` must be at least {}, got {}!".format(
            MIN_GRID_SIZE, grid_size))
    if model.predictor_is_circular:
        delta = circular.wrap(delta)

    def density(y):
        return conditional_density(model, delta, y)

    if model.response_is_circular:
        modes = grid_modes(density, -np.pi, np.pi, grid_size, periodic=True)
    else:
        centers = model.branch_values(delta)[0]
        spread = 8 * np.max(model.dispersions)
        modes = grid_modes(density, np.min(centers) - spread,
                           np.max(centers) + spread, grid_size)
    return ModeSet(modes, model.response_is_circular)


def oracle_multifunction(model, mesh, grid_size=ORACLE_GRID_SIZE):
    """True modal regression multifunction of a model on a mesh"""
    mesh = np.atleast_1d(np.asarray(mesh, dtype=float))
    if model.predictor_is_circular:
        mesh = np.atleast_1d(circular.wrap(mesh))
    branches = []
    densities = []
    for delta in mesh:
        modes = oracle_modes(model, delta, grid_size).values
        branches.append(modes)
        densities.append(conditional_density(model, delta, modes))
    return ModalMultifunction(model.geometry, mesh, branches,
                              densities=densities)
