"""Conditional mean shift and circular conditional mean shift

For a fixed predictor value δ, the mean shift map moves a response
value to a weighted mean of the observed responses:

    real response      ω(y) = Σ w_j G((y - Y_j)/h) Y_j / Σ w_j G((y - Y_j)/h)
    circular response  ω̃(φ) = atan2(Σ w_j T(φ - Φ_j) sin Φ_j,
                                    Σ w_j T(φ - Φ_j) cos Φ_j)

where w_j = w_δ(Δ_j) are the predictor kernel weights. Iterating the
map is a gradient ascent on the estimated conditional density; its
fixed points with negative second derivative are the conditional
modes, i.e. the branches of the modal regression multifunction.
"""
import collections
import warnings

import numpy as np

from . import circular
from .density import (Bandwidths, ConditionalDensity, LowSupportError,
                      RegressionSample)
from .parallel import map_ordered

#: Convergence threshold on the size of a mean shift step
DEFAULT_TOL_STEP = 1e-8
#: Maximum number of mean shift iterations per starting point
DEFAULT_MAX_ITER = 500
#: Number of nearest sample points used as local starting values
DEFAULT_INIT_NEIGHBORS = 10
#: Number of mesh points if no mesh is given
DEFAULT_MESH_SIZE = 128

_TINY = np.finfo(float).tiny


class DegenerateWeightError(ValueError):
    """All weights of a mean shift step vanish numerically"""

    def __init__(self, message, iteration=None):
        super(DegenerateWeightError, self).__init__(message)
        self.iteration = iteration


class FixedPointError(ValueError):
    """A mean shift iteration met an undefined step"""

    def __init__(self, message, iteration=None):
        super(FixedPointError, self).__init__(message)
        self.iteration = iteration


class EmptyBranchWarning(UserWarning):
    pass


class NotConvergedWarning(UserWarning):
    pass


class MeanShiftConfig(object):
    """Stopping, merging and initialization options of the mean shift"""

    def __init__(self, max_iter=DEFAULT_MAX_ITER, tol_step=DEFAULT_TOL_STEP,
                 merge_tol=None, init_neighbors=DEFAULT_INIT_NEIGHBORS,
                 init="local"):
        """
        Parameters
        ----------
        max_iter : int
            Maximum number of iterations per starting point.
        tol_step : float
            The iteration stops when the step size drops below this
            value; the step size is |y_{l+1} - y_l| for real responses
            and the wrapped angle |φ_{l+1} - φ_l| for circular responses.
        merge_tol : float or None
            Modes at one mesh point closer than this (absolute
            difference, or 1 - cos for circular responses) are merged.
            If None, h/10 (real response) or 0.1/κ (circular response)
            is used.
        init_neighbors : int
            Number of sample points nearest to a mesh point (in the
            predictor) whose responses are used as starting values.
        init : str
            "local" uses `init_neighbors` nearest responses, "all"
            starts from every sample response.
        """
        self.max_iter = int(max_iter)
        self.tol_step = float(tol_step)
        self.merge_tol = None if merge_tol is None else float(merge_tol)
        self.init_neighbors = int(init_neighbors)
        self.init = init
        if self.max_iter < 1:
            raise ValueError("`max_iter` must be at least 1!")
        if not self.tol_step > 0:
            raise ValueError("`tol_step` must be positive!")
        if self.merge_tol is not None and not self.merge_tol >= self.tol_step:
            raise ValueError("`merge_tol` must not be smaller than "
                             "`tol_step` ({} < {})!".format(self.merge_tol,
                                                            self.tol_step))
        if self.init_neighbors < 1:
            raise ValueError("`init_neighbors` must be at least 1!")
        if self.init not in ("local", "all"):
            raise ValueError("`init` must be 'local' or 'all', got "
                             "'{}'!".format(self.init))

    def __repr__(self):
        return ("MeanShiftConfig(max_iter={}, tol_step={:g}, merge_tol={}, "
                "init_neighbors={}, init='{}')").format(
                    self.max_iter, self.tol_step, self.merge_tol,
                    self.init_neighbors, self.init)

    def resolve_merge_tol(self, bandwidths, response_is_circular):
        """The merge radius to use with `bandwidths`"""
        if self.merge_tol is not None:
            return self.merge_tol
        if response_is_circular:
            tol = 0.1 / bandwidths.response_smoothing
        else:
            tol = bandwidths.response_smoothing / 10
        return max(tol, self.tol_step)


class _ShiftOperator(object):
    """Mean shift map at one predictor value, vectorized over starts"""

    def __init__(self, est, delta):
        self.est = est
        self.circular = est.sample.response_is_circular
        w = est.predictor_weights(delta)
        wmax = np.max(w)
        if not wmax > 0:
            raise DegenerateWeightError(
                "All predictor weights vanish at {:.6g}".format(delta))
        # mean shift steps are invariant to a positive scaling
        self.weights = w / wmax
        self.responses = est.sample.responses
        if self.circular:
            self._sin = np.sin(self.responses)
            self._cos = np.cos(self.responses)

    def apply(self, x):
        """Return (ω(x), ok) for an array of current values `x`"""
        x = np.asarray(x, dtype=float)
        kernel = self.est.response_kernel
        diff = x[:, np.newaxis] - self.responses
        g = kernel.shift_weight(diff) * self.weights
        g = np.atleast_2d(g)
        if self.circular:
            s = g @ self._sin
            c = g @ self._cos
            ok = np.hypot(s, c) >= circular.TAU_RES
            with np.errstate(invalid="ignore"):
                new = np.where(ok, circular.wrap(np.arctan2(s, c)), np.nan)
        else:
            den = np.sum(g, axis=1)
            ok = den > _TINY
            with np.errstate(invalid="ignore", divide="ignore"):
                new = np.where(ok, (g @ self.responses) / den, np.nan)
        return np.atleast_1d(new), np.atleast_1d(ok)

    def step_size(self, old, new):
        if self.circular:
            return np.abs(circular.wrap(new - old))
        return np.abs(new - old)


def _check_response(est, circular_response):
    if est.sample.response_is_circular != circular_response:
        kind = "circular" if circular_response else "real-valued"
        raise ValueError("This step requires a {} response, got geometry "
                         "'{}'!".format(kind, est.geometry))


def shift_step_linear(est, delta, y):
    """One conditional mean shift step ω(y) for a real response

    Parameters
    ----------
    est : ConditionalDensity
        Estimate of a "circ_lin" sample.
    delta : float
        Predictor value.
    y : float
        Current response value.

    Returns
    -------
    omega : float
        Weighted mean of the responses; ω(y) - y has the sign of
        ∂/∂y f̂(y|δ).
    """
    _check_response(est, circular_response=False)
    new, ok = _ShiftOperator(est, delta).apply([y])
    if not ok[0]:
        raise DegenerateWeightError(
            "Mean shift weights vanish at ({:.6g}, {:.6g})".format(delta, y))
    return float(new[0])


def shift_step_circular(est, delta, phi):
    """One circular conditional mean shift step ω̃(φ)

    The circular mean shift sin(ω̃(φ) - φ) has the sign of
    ∂/∂φ f̂(φ|δ).

    Raises
    ------
    DegenerateDirectionError
        If the weighted sine and cosine sums both vanish.
    """
    _check_response(est, circular_response=True)
    op = _ShiftOperator(est, delta)
    diff = phi - op.responses
    weights = op.weights * est.response_kernel.shift_weight(diff)
    return circular.weighted_mean_direction(op.responses, weights)


def run_fixed_point(est, delta, start, cfg=None, return_path=False):
    """Iterate the mean shift map until the step size drops below tol

    Parameters
    ----------
    est : ConditionalDensity
        The conditional density estimate.
    delta : float
        Predictor value.
    start : float or 1d array-like
        Starting response value(s). Arrays are iterated
        independently and simultaneously.
    cfg : MeanShiftConfig
        Stopping rule; defaults to `MeanShiftConfig()`.
    return_path : bool
        Also return the trajectory.

    Returns
    -------
    mode : float or ndarray
        Last iterate(s).
    iterations : int or ndarray
        Number of mean shift steps performed.
    converged : bool or ndarray
        True if the tolerance criterion fired.
    path : list
        Only if `return_path`; the iterates (starting value first).
        For array input each entry is an array, with NaN for runs that
        already stopped.

    Raises
    ------
    FixedPointError
        For scalar `start`, if a step is undefined (vanishing weights
        or an undefined mean direction); `iteration` holds the index
        of the offending iterate. For array input such runs end with
        a NaN mode and `converged` False.
    """
    if cfg is None:
        cfg = MeanShiftConfig()
    scalar = np.ndim(start) == 0
    x = np.atleast_1d(np.array(start, dtype=float)).copy()
    circ = est.sample.response_is_circular
    if circ:
        x = np.atleast_1d(circular.wrap(x))
    op = _ShiftOperator(est, delta)
    iterations = np.zeros(x.size, dtype=int)
    converged = np.zeros(x.size, dtype=bool)
    active = np.ones(x.size, dtype=bool)
    path = [x.copy()]
    for ii in range(cfg.max_iter):
        idx = np.flatnonzero(active)
        new, ok = op.apply(x[idx])
        if not np.all(ok):
            if scalar:
                kind = "direction" if circ else "weight"
                raise FixedPointError(
                    "Degenerate mean shift {} at iterate {} "
                    "(δ={:.6g}, value={:.6g})".format(kind, ii, delta,
                                                      x[0]),
                    iteration=ii)
            bad = idx[~ok]
            x[bad] = np.nan
            active[bad] = False
            idx = idx[ok]
            new = new[ok]
        step = op.step_size(x[idx], new)
        x[idx] = new
        iterations[idx] += 1
        done = step < cfg.tol_step
        converged[idx[done]] = True
        active[idx[done]] = False
        if return_path:
            snap = np.full(x.size, np.nan)
            snap[idx] = new
            path.append(snap)
        if not np.any(active):
            break
    if scalar:
        result = (float(x[0]), int(iterations[0]), bool(converged[0]))
        if return_path:
            result += ([float(p[0]) for p in path],)
        return result
    if return_path:
        return x, iterations, converged, path
    return x, iterations, converged


def default_mesh(sample, size=DEFAULT_MESH_SIZE):
    """Equally spaced mesh over the predictor support

    Circular predictors get `size` points on (-π, π] ending at π,
    linear predictors `size` points spanning the observed range.
    """
    size = int(size)
    if size < 1:
        raise ValueError("Mesh size must be positive!")
    if sample.predictor_is_circular:
        return -np.pi + 2 * np.pi * np.arange(1, size + 1) / size
    lo = np.min(sample.predictors)
    hi = np.max(sample.predictors)
    return np.linspace(lo, hi, size)


def starting_points(sample, delta, cfg):
    """Responses used as mean shift starting values at `delta`"""
    if cfg.init == "all" or cfg.init_neighbors >= sample.n:
        return sample.responses.copy()
    if sample.predictor_is_circular:
        dist = circular.circ_dist(delta, sample.predictors)
    else:
        dist = np.abs(delta - sample.predictors)
    nearest = np.argsort(dist, kind="stable")[:cfg.init_neighbors]
    return sample.responses[nearest]


def _response_distance(a, b, circ):
    if circ:
        return circular.circ_dist(a, b)
    return np.abs(np.asarray(a) - np.asarray(b))


#: Branch set at one predictor value, see `fit_point`
BranchSet = collections.namedtuple("BranchSet",
                                   ["modes", "densities", "iterations",
                                    "n_not_converged"])


def fit_point(est, delta, cfg=None, warn=True):
    """Conditional modes at a single predictor value

    Parameters
    ----------
    est : ConditionalDensity
        The conditional density estimate.
    delta : float
        Predictor value.
    cfg : MeanShiftConfig
        Mean shift options; defaults to `MeanShiftConfig()`.
    warn : bool
        Emit an `EmptyBranchWarning` if no mode survives.

    Returns
    -------
    branches : BranchSet
        Sorted modes with their conditional densities and iteration
        counts, plus the number of discarded non-converged runs.
        Without data support at `delta` the branch set is empty.
    """
    if cfg is None:
        cfg = MeanShiftConfig()
    merge_tol = cfg.resolve_merge_tol(est.bandwidths,
                                      est.sample.response_is_circular)

    def _empty(reason, n_failed):
        if warn:
            warnings.warn("{} at predictor value {:.6g}; empty branch "
                          "set.".format(reason, delta), EmptyBranchWarning)
        return BranchSet(np.zeros(0), np.zeros(0), np.zeros(0, dtype=int),
                         n_failed)

    try:
        est.normalized_weights(delta)
    except LowSupportError:
        return _empty("No data support", 0)
    circ = est.sample.response_is_circular
    starts = starting_points(est.sample, delta, cfg)
    modes, iters, conv = run_fixed_point(est, delta, starts, cfg)
    n_failed = int(np.sum(~conv))
    modes = modes[conv]
    iters = iters[conv]
    if modes.size == 0:
        return _empty("No converged mean shift run", n_failed)
    dens = np.atleast_1d(est.conditional_eval(delta, modes))
    # merge coincident fixed points, keeping the highest density
    order = np.argsort(-dens, kind="stable")
    keep = []
    for ii in order:
        if all(_response_distance(modes[ii], modes[jj], circ) > merge_tol
               for jj in keep):
            keep.append(ii)
    keep = np.array(keep, dtype=int)
    modes, dens, iters = modes[keep], dens[keep], iters[keep]
    # discard antimodes and saddles
    curv = np.atleast_1d(est.conditional_deriv(delta, modes, order=2))
    ismax = curv < 0
    modes, dens, iters = modes[ismax], dens[ismax], iters[ismax]
    if modes.size == 0:
        return _empty("Only non-maximal fixed points", n_failed)
    srt = np.argsort(modes, kind="stable")
    return BranchSet(modes[srt], dens[srt], iters[srt], n_failed)


class ModalMultifunction(object):
    """Estimated conditional modes (branches) on a predictor mesh"""

    def __init__(self, geometry, mesh, branches, densities=None,
                 iterations=None, bandwidths=None, n=None):
        """
        Parameters
        ----------
        geometry : str
            Geometry tag of the underlying sample.
        mesh : 1d array-like
            Predictor mesh.
        branches : list of 1d array-like
            Modes at each mesh point (may be empty).
        densities : list of 1d array-like
            Estimated conditional density at each mode.
        iterations : list of 1d array-like
            Mean shift iterations spent on each mode.
        bandwidths : Bandwidths
            Smoothing pair used for the fit.
        n : int
            Size of the sample used for the fit.
        """
        self.geometry = geometry
        self.mesh = np.asarray(mesh, dtype=float).ravel()
        if len(branches) != self.mesh.size:
            raise ValueError("Need one branch set per mesh point "
                             "({} vs {})!".format(len(branches),
                                                  self.mesh.size))
        self.branches = [np.atleast_1d(np.asarray(b, dtype=float))
                         for b in branches]
        if densities is None:
            densities = [np.full(b.size, np.nan) for b in self.branches]
        if iterations is None:
            iterations = [np.zeros(b.size, dtype=int) for b in self.branches]
        self.densities = [np.atleast_1d(np.asarray(d, dtype=float))
                          for d in densities]
        self.iterations = [np.atleast_1d(np.asarray(i, dtype=int))
                           for i in iterations]
        self.bandwidths = bandwidths
        self.n = n

    def __len__(self):
        return self.mesh.size

    def __repr__(self):
        return "ModalMultifunction ({}, {} mesh points, {} modes)".format(
            self.geometry, len(self), int(np.sum(self.branch_counts())))

    @property
    def response_is_circular(self):
        return self.geometry in ("lin_circ", "circ_circ")

    def at(self, index):
        """Branch set (modes) at mesh index `index`"""
        return self.branches[index]

    def branch_counts(self):
        """Number of branches at each mesh point"""
        return np.array([b.size for b in self.branches], dtype=int)

    def records(self):
        """List of (mesh_value, mode_value, density_value, iterations)"""
        recs = []
        for ii, delta in enumerate(self.mesh):
            for m, d, it in zip(self.branches[ii], self.densities[ii],
                                self.iterations[ii]):
                recs.append((float(delta), float(m), float(d), int(it)))
        return recs


def fit_multifunction(sample, bandwidths, mesh=None, cfg=None, workers=1):
    """Estimate the modal regression multifunction on a mesh

    For each mesh point δ, the responses of the sample points nearest
    to δ start a mean shift run; converged runs are merged (keeping the
    highest density) and fixed points with non-negative second
    derivative are discarded.

    Parameters
    ----------
    sample : RegressionSample
        The data.
    bandwidths : Bandwidths or tuple of two floats
        Smoothing pair (predictor, response).
    mesh : 1d array-like or None
        Predictor values; `default_mesh(sample)` if None.
    cfg : MeanShiftConfig
        Mean shift options; defaults to `MeanShiftConfig()`.
    workers : int or None
        Number of threads used to process mesh points.

    Returns
    -------
    mf : ModalMultifunction
        Mesh points without surviving modes get an empty branch set
        (and an `EmptyBranchWarning`).
    """
    if not isinstance(sample, RegressionSample):
        raise ValueError("`sample` must be instance of RegressionSample!")
    if not isinstance(bandwidths, Bandwidths):
        bandwidths = Bandwidths(*bandwidths)
    if cfg is None:
        cfg = MeanShiftConfig()
    if mesh is None:
        mesh = default_mesh(sample)
    mesh = np.atleast_1d(np.asarray(mesh, dtype=float))
    if mesh.size == 0:
        raise ValueError("`mesh` must not be empty!")
    if sample.predictor_is_circular:
        mesh = np.atleast_1d(circular.wrap(mesh))
    est = ConditionalDensity(sample, bandwidths)

    results = map_ordered(lambda d: fit_point(est, d, cfg), mesh,
                          workers=workers)
    n_failed = sum(r.n_not_converged for r in results)
    if n_failed:
        warnings.warn("{} mean shift runs did not converge within {} "
                      "iterations and were discarded.".format(
                          n_failed, cfg.max_iter), NotConvergedWarning)
    return ModalMultifunction(geometry=sample.geometry,
                              mesh=mesh,
                              branches=[r.modes for r in results],
                              densities=[r.densities for r in results],
                              iterations=[r.iterations for r in results],
                              bandwidths=bandwidths,
                              n=sample.n)
