"""Mixture-of-regressions pilot for the parametric bootstrap

The pilot conditional density of a real response given a circular
predictor is

    f̃(y|θ) = Σ_t π_t N(y - β_0t - β_1t b_1(θ) - ... - β_kt b_k(θ), σ²)

with periodic cubic B-splines b_1..b_k and a common variance σ². It
is fitted by expectation-maximization for T = 1..T_max components and
the component count with the smallest BIC is kept.
"""
import warnings

import numpy as np
from scipy import stats
from scipy.interpolate import BSpline
from scipy.special import logsumexp

from .. import circular
from ..simulate.oracle import ORACLE_GRID_SIZE, grid_modes
from .errors import (DegenerateRestartWarning, InsufficientDataError,
                     PilotFitError, UnsupportedGeometryError)

#: Number of periodic basis functions
DEFAULT_BASIS_SIZE = 8
#: Largest number of mixture components tried
DEFAULT_MAX_COMPONENTS = 3
#: Random restarts of the EM per component count
DEFAULT_RESTARTS = 5
#: EM stops when the log-likelihood changes less than this
EM_TOL = 1e-8
#: Maximum number of EM iterations
EM_MAX_ITER = 300


class PeriodicBSplineBasis(object):
    """Cyclic B-spline basis with equally spaced knots on (-π, π]"""

    def __init__(self, size=DEFAULT_BASIS_SIZE, degree=3):
        size = int(size)
        degree = int(degree)
        if degree < 0:
            raise ValueError("`degree` must be non-negative!")
        if size < degree + 1:
            raise ValueError("A periodic basis of degree {} needs at least "
                             "{} functions, got {}!".format(degree,
                                                            degree + 1, size))
        self.size = size
        self.degree = degree
        spacing = 2 * np.pi / size
        self._elements = []
        for ii in range(size):
            knots = -np.pi + spacing * np.arange(ii, ii + degree + 2)
            self._elements.append(
                BSpline.basis_element(knots, extrapolate=False))

    def __repr__(self):
        return "PeriodicBSplineBasis(size={}, degree={})".format(self.size,
                                                                 self.degree)

    def __call__(self, theta):
        """Array (len(theta), size) of basis function values"""
        theta = np.atleast_1d(circular.wrap(theta))
        out = np.zeros((theta.size, self.size))
        for ii, elem in enumerate(self._elements):
            for shift in (-2 * np.pi, 0.0, 2 * np.pi):
                out[:, ii] += np.nan_to_num(elem(theta + shift))
        return out

    def design(self, theta):
        """Design matrix with a leading intercept column"""
        basis = self(theta)
        return np.hstack([np.ones((basis.shape[0], 1)), basis])


class MixturePilot(object):
    """Fitted mixture of regressions on a periodic B-spline basis"""

    def __init__(self, weights, coefficients, sigma2, basis,
                 loglik=None, n=None):
        """
        Parameters
        ----------
        weights : 1d array-like of length T
            Mixing weights π_t, summing to 1.
        coefficients : 2d array-like of shape (T, k+1)
            Intercept and basis coefficients of each component.
        sigma2 : float
            Common variance σ².
        basis : PeriodicBSplineBasis
            Basis with k functions.
        loglik : float
            Log-likelihood of the fit.
        n : int
            Number of observations of the fit.
        """
        weights = np.atleast_1d(np.asarray(weights, dtype=float))
        coefficients = np.atleast_2d(np.asarray(coefficients, dtype=float))
        if np.any(weights < 0) or abs(np.sum(weights) - 1) > 1e-10:
            raise ValueError("Mixing weights must be non-negative and sum "
                             "to 1!")
        if coefficients.shape != (weights.size, basis.size + 1):
            raise ValueError("Coefficients must have shape {}, got {}!"
                             .format((weights.size, basis.size + 1),
                                     coefficients.shape))
        sigma2 = float(sigma2)
        if not (np.isfinite(sigma2) and sigma2 > 0):
            raise ValueError("`sigma2` must be positive, got {}!".format(
                sigma2))
        self.weights = weights
        self.coefficients = coefficients
        self.sigma2 = sigma2
        self.basis = basis
        self.loglik = loglik
        self.n = n

    def __repr__(self):
        return "MixturePilot(T={}, k={}, sigma2={:.4g})".format(
            self.n_components, self.basis.size, self.sigma2)

    @property
    def n_components(self):
        return self.weights.size

    @property
    def n_parameters(self):
        """T(k+1) coefficients, T-1 free weights and one variance"""
        return self.n_components * (self.basis.size + 1) + self.n_components

    def bic(self, n=None):
        """Bayesian information criterion -2 loglik + p log n"""
        if n is None:
            n = self.n
        if self.loglik is None or n is None:
            raise ValueError("BIC needs the log-likelihood and `n`!")
        return -2 * self.loglik + self.n_parameters * np.log(n)

    def means(self, theta):
        """Component regression curves, array (len(theta), T)"""
        return self.basis.design(theta) @ self.coefficients.T

    def conditional_density(self, y, theta):
        """Pilot conditional density f̃(y|θ) for a single θ"""
        mu = self.means(theta)[0]
        y = np.asarray(y, dtype=float)
        comps = stats.norm.pdf(y[..., np.newaxis], loc=mu,
                               scale=np.sqrt(self.sigma2))
        return comps @ self.weights

    def draw(self, theta, rng):
        """One response per predictor value from the pilot conditional"""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        labels = rng.choice(self.n_components, size=theta.size,
                            p=self.weights)
        mu = self.means(theta)[np.arange(theta.size), labels]
        return mu + np.sqrt(self.sigma2) * rng.standard_normal(theta.size)

    def modes(self, theta, grid_size=ORACLE_GRID_SIZE):
        """Local maxima of f̃(.|θ) by dense grid search with refinement"""
        mu = self.means(theta)[0]
        spread = 8 * np.sqrt(self.sigma2)
        return grid_modes(lambda y: self.conditional_density(y, theta),
                          np.min(mu) - spread, np.max(mu) + spread,
                          grid_size)


class _Degenerate(Exception):
    pass


def _em(design, y, n_components, rng, tol, max_iter):
    """One EM run from random responsibilities

    Returns (weights, coefficients, sigma2, loglik).
    """
    n, p = design.shape
    resp = rng.dirichlet(np.ones(n_components), size=n)
    var_floor = max(1e-8 * np.var(y), 1e-12)
    loglik = -np.inf
    for _ in range(max_iter):
        # M-step
        counts = resp.sum(axis=0)
        if np.any(counts < p):
            raise _Degenerate("component with {:.2f} effective "
                              "observations".format(np.min(counts)))
        weights = counts / n
        coefs = np.zeros((n_components, p))
        sq = 0.0
        for tt in range(n_components):
            sw = np.sqrt(resp[:, tt])
            # the intercept is collinear with the basis (partition of
            # unity); lstsq returns the minimum-norm solution
            coefs[tt] = np.linalg.lstsq(design * sw[:, np.newaxis], y * sw,
                                        rcond=None)[0]
            sq += np.sum(resp[:, tt] * (y - design @ coefs[tt])**2)
        sigma2 = max(sq / n, var_floor)
        # E-step
        mu = design @ coefs.T
        logp = np.log(weights) + stats.norm.logpdf(
            y[:, np.newaxis], loc=mu, scale=np.sqrt(sigma2))
        norm = logsumexp(logp, axis=1)
        resp = np.exp(logp - norm[:, np.newaxis])
        new_loglik = float(np.sum(norm))
        converged = abs(new_loglik - loglik) < tol
        loglik = new_loglik
        if converged:
            break
    weights = weights / np.sum(weights)
    return weights, coefs, sigma2, loglik


def fit_mixture_pilot(sample, max_components=DEFAULT_MAX_COMPONENTS,
                      basis_size=DEFAULT_BASIS_SIZE,
                      restarts=DEFAULT_RESTARTS, seed=None,
                      tol=EM_TOL, max_iter=EM_MAX_ITER):
    """Fit the mixture-of-regressions pilot and select T by BIC

    Parameters
    ----------
    sample : RegressionSample
        A "circ_lin" sample with n >= 10(k+1).
    max_components : int
        Component counts 1..`max_components` are tried.
    basis_size : int
        Number k of periodic B-spline functions.
    restarts : int
        EM runs from random responsibilities per component count; the
        run with the highest log-likelihood is kept.
    seed : int or None
        Seed of the random initialization.
    tol, max_iter : float, int
        EM stopping rule.

    Returns
    -------
    pilot : MixturePilot
        Components ordered by mean intercept.

    Raises
    ------
    PilotFitError
        If every restart of every component count degenerated. A
        component count whose restarts all degenerate is skipped with
        a `DegenerateRestartWarning`.
    """
    if sample.geometry != "circ_lin":
        raise UnsupportedGeometryError(
            "The mixture pilot is only available for 'circ_lin' samples, "
            "got '{}'; use modal cross-validation.".format(sample.geometry))
    basis = PeriodicBSplineBasis(basis_size)
    if sample.n < 10 * (basis.size + 1):
        raise InsufficientDataError(
            "The pilot with {} basis functions needs at least {} "
            "observations, got {}!".format(basis.size, 10 * (basis.size + 1),
                                           sample.n))
    max_components = int(max_components)
    if max_components < 1:
        raise ValueError("`max_components` must be at least 1!")
    rng = np.random.default_rng(seed)
    design = basis.design(sample.predictors)
    y = np.asarray(sample.responses, dtype=float)

    best_pilot = None
    for ncomp in range(1, max_components + 1):
        best = None
        for rr in range(int(restarts)):
            try:
                res = _em(design, y, ncomp, rng, tol, max_iter)
            except _Degenerate as exc:
                warnings.warn("EM restart {} with T={} discarded: {}".format(
                    rr, ncomp, exc), DegenerateRestartWarning)
                continue
            if best is None or res[3] > best[3]:
                best = res
        if best is None:
            warnings.warn("All {} EM restarts with T={} degenerated; "
                          "T={} is not considered.".format(restarts, ncomp,
                                                           ncomp),
                          DegenerateRestartWarning)
            continue
        weights, coefs, sigma2, loglik = best
        order = np.argsort(np.mean(design @ coefs.T, axis=0), kind="stable")
        pilot = MixturePilot(weights[order], coefs[order], sigma2, basis,
                             loglik=loglik, n=sample.n)
        if best_pilot is None or pilot.bic() < best_pilot.bic():
            best_pilot = pilot
    if best_pilot is None:
        raise PilotFitError("All EM restarts degenerated for every "
                            "component count up to {}!".format(
                                max_components))
    return best_pilot
