"""Set-valued errors between modal regression multifunctions

The Hausdorff distance between finite sets A, B

    Haus(A, B) = max{ sup_{x∈A} d(x, B), sup_{x∈B} d(x, A) }

uses d(x, A) = inf_{z∈A} |x - z| for real responses; the circular
variant replaces |x - z| with the cosine dissimilarity 1 - cos(x - z).
"""
import collections

import numpy as np
from scipy.spatial.distance import cdist

from . import circular


class UndefinedDistanceError(ValueError):
    """A distance involving an empty set was requested"""

    def __init__(self, message, mesh_index=None):
        super(UndefinedDistanceError, self).__init__(message)
        self.mesh_index = mesh_index


#: Result of `empirical_global_error`
GlobalError = collections.namedtuple("GlobalError",
                                     ["value", "n_undefined", "pointwise"])


class ModeSet(object):
    """Finite non-empty set of response values of one geometry"""

    def __init__(self, values, circular_response):
        """
        Parameters
        ----------
        values : float or array-like
            Response values (radians if circular).
        circular_response : bool
            Whether the values are angles.
        """
        values = np.atleast_1d(np.asarray(values, dtype=float)).ravel()
        if values.size == 0:
            raise UndefinedDistanceError("A mode set must not be empty!")
        if not np.all(np.isfinite(values)):
            raise ValueError("Mode values must be finite!")
        self.circular = bool(circular_response)
        if self.circular:
            values = np.atleast_1d(circular.wrap(values))
        self.values = values

    def __len__(self):
        return self.values.size

    def __repr__(self):
        kind = "circular" if self.circular else "real"
        return "ModeSet({}, {})".format(kind, self.values.tolist())


def _as_modeset(values, circular_response):
    if isinstance(values, ModeSet):
        if values.circular != circular_response:
            raise ValueError("Expected a {} mode set, got {}!".format(
                "circular" if circular_response else "real", values))
        return values
    return ModeSet(values, circular_response)


def _distance_matrix(a, b, circ):
    if circ:
        return circular.circ_dist(a[:, np.newaxis], b[np.newaxis, :])
    return cdist(a[:, np.newaxis], b[:, np.newaxis], metric="cityblock")


def _hausdorff(a, b, circ):
    dist = _distance_matrix(a, b, circ)
    return float(max(np.max(np.min(dist, axis=1)),
                     np.max(np.min(dist, axis=0))))


def hausdorff(set_a, set_b):
    """Hausdorff distance between two finite sets of real values

    Parameters
    ----------
    set_a, set_b : ModeSet or array-like
        Non-empty sets.

    Raises
    ------
    UndefinedDistanceError
        If one of the sets is empty.
    """
    a = _as_modeset(set_a, circular_response=False)
    b = _as_modeset(set_b, circular_response=False)
    return _hausdorff(a.values, b.values, circ=False)


def circular_hausdorff(set_a, set_b):
    """Circular Hausdorff distance in [0, 2] with cosine dissimilarity"""
    a = _as_modeset(set_a, circular_response=True)
    b = _as_modeset(set_b, circular_response=True)
    return _hausdorff(a.values, b.values, circ=True)


def distance_to_set(x, values, circular_response):
    """Squared distance (real) or 1 - cos (circular) from x to a set"""
    values = _as_modeset(values, circular_response).values
    if circular_response:
        return float(np.min(circular.circ_dist(x, values)))
    return float(np.min((values - x)**2))


def empty_branch_penalty(sample):
    """Worst-case surrogate for distances involving an empty branch set

    2·(range of responses)² for real responses and 2 (the maximal
    cosine dissimilarity) for circular responses. Constant real
    responses have no range; their scale max(1, |y|) is used instead
    so that the penalty stays positive.
    """
    if sample.response_is_circular:
        return 2.0
    spread = float(np.ptp(sample.responses))
    if not spread > 0:
        spread = max(1.0, float(np.max(np.abs(sample.responses))))
    return 2.0 * spread**2


def _check_aligned(true_mf, est_mf):
    if true_mf.geometry != est_mf.geometry:
        raise ValueError("Geometry mismatch: '{}' vs '{}'!".format(
            true_mf.geometry, est_mf.geometry))
    if len(true_mf) != len(est_mf):
        raise ValueError("Mesh size mismatch: {} vs {}!".format(
            len(true_mf), len(est_mf)))
    diverge = np.flatnonzero(~np.isclose(true_mf.mesh, est_mf.mesh,
                                         rtol=0, atol=1e-12))
    if diverge.size:
        ii = diverge[0]
        raise ValueError("Meshes diverge at index {}: {!r} vs {!r}!".format(
            ii, true_mf.mesh[ii], est_mf.mesh[ii]))


def pointwise_error(true_mf, est_mf, mesh_index):
    """Hausdorff distance of the branch sets at one mesh point

    Parameters
    ----------
    true_mf, est_mf : ModalMultifunction
        Multifunctions of the same geometry on the same mesh.
    mesh_index : int
        Index into the mesh.

    Returns
    -------
    error : float
        `hausdorff` for real and `circular_hausdorff` for circular
        responses.

    Raises
    ------
    UndefinedDistanceError
        If one of the branch sets is empty; `mesh_index` is attached.
    """
    _check_aligned(true_mf, est_mf)
    a = true_mf.at(mesh_index)
    b = est_mf.at(mesh_index)
    if a.size == 0 or b.size == 0:
        side = "true" if a.size == 0 else "estimated"
        raise UndefinedDistanceError(
            "Empty {} branch set at mesh index {} ({:.6g})".format(
                side, mesh_index, true_mf.mesh[mesh_index]),
            mesh_index=mesh_index)
    if true_mf.response_is_circular:
        return circular_hausdorff(a, b)
    return hausdorff(a, b)


def empirical_global_error(true_mf, est_mf):
    """Mesh average of Λ² (real response) or of Λ̃ (circular response)

    Mesh points with an undefined pointwise error are left out of the
    average and counted.

    Returns
    -------
    result : GlobalError
        `value` is the average, `n_undefined` the number of excluded
        mesh points and `pointwise` the pointwise errors (NaN where
        undefined).

    Raises
    ------
    UndefinedDistanceError
        If the pointwise error is undefined at every mesh point.
    """
    _check_aligned(true_mf, est_mf)
    pointwise = np.full(len(true_mf), np.nan)
    for ii in range(len(true_mf)):
        try:
            pointwise[ii] = pointwise_error(true_mf, est_mf, ii)
        except UndefinedDistanceError:
            pass
    defined = np.isfinite(pointwise)
    if not np.any(defined):
        raise UndefinedDistanceError("Pointwise error undefined at every "
                                     "mesh point!")
    vals = pointwise[defined]
    if not true_mf.response_is_circular:
        vals = vals**2
    return GlobalError(value=float(np.mean(vals)),
                       n_undefined=int(np.sum(~defined)),
                       pointwise=pointwise)
