"""Circular arithmetic on the representative interval (-π, π]

All angles handled by pycircmodal are stored in radians. Every
function in this module accepts scalars or array-likes and returns
the same kind.
"""
import numpy as np

#: Threshold on the norm of (Σw sin, Σw cos) below which a weighted
#: mean direction is declared undefined.
TAU_RES = 1e-12

TWO_PI = 2 * np.pi


class DegenerateDirectionError(ValueError):
    """The weighted mean direction of a set of angles is undefined"""
    pass


def _as_float(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("Angles must be finite, got {}!".format(x))
    return arr


def wrap(x):
    """Map radians to the representative in (-π, π]

    Parameters
    ----------
    x : float or array-like
        Finite angle(s) in radians.

    Returns
    -------
    angle : float or ndarray
        The unique value congruent to `x` modulo 2π with
        -π < angle <= π.
    """
    arr = _as_float(x)
    out = np.pi - np.mod(np.pi - arr, TWO_PI)
    # np.mod may round to 2π for tiny negative arguments
    out = np.where(out <= -np.pi, np.pi, out)
    # representatives are returned unchanged (bit for bit)
    out = np.where((arr > -np.pi) & (arr <= np.pi), arr, out)
    if out.ndim == 0:
        return float(out)
    return out


def circ_dist(a, b):
    """Cosine dissimilarity 1 - cos(a - b), in [0, 2]"""
    d = 1 - np.cos(_as_float(a) - _as_float(b))
    # 1 - cos can round to tiny negatives
    d = np.maximum(d, 0)
    if d.ndim == 0:
        return float(d)
    return d


def angular_difference(a, b):
    """Signed difference a - b wrapped to (-π, π]"""
    return wrap(_as_float(a) - _as_float(b))


def weighted_mean_direction(angles, weights, tol=TAU_RES):
    """Weighted circular mean direction

    Returns atan2(Σ w_j sin Φ_j, Σ w_j cos Φ_j). Weights may be
    negative.

    Parameters
    ----------
    angles : array-like of length N
        Angles Φ_j in radians.
    weights : array-like of length N
        Finite weights w_j.
    tol : float
        Degeneracy threshold on the Euclidean norm of the two
        component sums.

    Raises
    ------
    DegenerateDirectionError
        If both component sums vanish (norm < `tol`).
    """
    angles = _as_float(angles).ravel()
    weights = np.asarray(weights, dtype=float).ravel()
    if angles.size == 0:
        raise ValueError("`angles` must not be empty!")
    if angles.size != weights.size:
        raise ValueError("`angles` and `weights` must have equal length "
                         "({} vs {})!".format(angles.size, weights.size))
    if not np.all(np.isfinite(weights)):
        raise ValueError("`weights` must be finite!")
    s = np.sum(weights * np.sin(angles))
    c = np.sum(weights * np.cos(angles))
    if np.hypot(s, c) < tol:
        raise DegenerateDirectionError(
            "Mean direction undefined: |(S, C)| = {:.3e} < {:.1e}".format(
                np.hypot(s, c), tol))
    # arctan2 may return -π for a negative zero sine sum
    return wrap(np.arctan2(s, c))
