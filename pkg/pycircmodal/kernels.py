"""Linear and circular smoothing kernels

Only the Gaussian (linear) and the von Mises (circular) families are
available. Both are radially symmetric with log-concave profiles, so
the mean shift weights G(.) and T(.) have closed forms:

    linear    L(u) ∝ l(u²),  l(s) = exp(-s/2),  G(u) = exp(-u²/2)
    circular  K_κ(u) ∝ K[κ(1 - cos u)],  K(s) = exp(-s),
              T(u) = exp(-κ(1 - cos u))

Normalizing constants of the weights are never materialized; every
consumer is invariant to positive scalings.
"""
import numpy as np
import scipy.special as sps

#: Linear kernel families
LINEAR_FAMILIES = ("gaussian",)
#: Circular kernel families
CIRCULAR_FAMILIES = ("von_mises",)

_SQRT_2PI = np.sqrt(2 * np.pi)


def bessel_i0(x):
    """Modified Bessel function of the first kind and order zero

    Parameters
    ----------
    x : float or array-like
        Non-negative argument(s).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise ValueError("`x` must be finite and non-negative!")
    out = sps.i0(x)
    if out.ndim == 0:
        return float(out)
    return out


def log_bessel_i0(x):
    """Logarithm of I₀(x), computed from the scaled function I₀(x)e^-x"""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise ValueError("`x` must be finite and non-negative!")
    out = np.log(sps.i0e(x)) + x
    if out.ndim == 0:
        return float(out)
    return out


def _positive(value, name):
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError("`{}` must be positive and finite, got {}!".format(
            name, value))
    return value


def _scalar_or_array(arr):
    if np.ndim(arr) == 0:
        return float(arr)
    return arr


class LinearKernel(object):
    """Scaled linear kernel L_h(u) = L(u/h)/h"""

    def __init__(self, h, family="gaussian"):
        """
        Parameters
        ----------
        h : float
            Bandwidth in units of the smoothed variable.
        family : str
            Kernel family, one of `LINEAR_FAMILIES`.
        """
        if family not in LINEAR_FAMILIES:
            raise ValueError("Unknown linear kernel family '{}', "
                             "expected one of {}".format(family,
                                                         LINEAR_FAMILIES))
        self._h = _positive(h, "h")
        self._family = family

    def __repr__(self):
        return "LinearKernel(h={:g}, family='{}')".format(self.h, self.family)

    def __eq__(self, other):
        return (isinstance(other, LinearKernel)
                and other.h == self.h and other.family == self.family)

    def __hash__(self):
        return hash(("linear", self.h, self.family))

    @property
    def family(self):
        return self._family

    @property
    def h(self):
        return self._h

    @property
    def is_circular(self):
        return False

    def evaluate(self, u):
        """Kernel density (1/h) L(u/h) at the difference(s) `u`"""
        z = np.asarray(u, dtype=float) / self.h
        return _scalar_or_array(np.exp(-0.5 * z * z) / (self.h * _SQRT_2PI))

    def derivative(self, u, order=1):
        """Closed-form derivative of `evaluate` with respect to `u`"""
        u = np.asarray(u, dtype=float)
        h2 = self.h * self.h
        val = np.exp(-0.5 * u * u / h2) / (self.h * _SQRT_2PI)
        if order == 0:
            out = val
        elif order == 1:
            out = -u / h2 * val
        elif order == 2:
            out = (u * u / h2 - 1) / h2 * val
        else:
            raise ValueError("`order` must be 0, 1 or 2, got {}!".format(
                order))
        return _scalar_or_array(out)

    def shift_weight(self, u):
        """Mean shift weight G(u/h) = exp(-(u/h)²/2), with G(0) = 1"""
        z = np.asarray(u, dtype=float) / self.h
        return _scalar_or_array(np.exp(-0.5 * z * z))


class CircularKernel(object):
    """Circular kernel K_κ(u) = c_κ K[κ(1 - cos u)]"""

    def __init__(self, kappa, family="von_mises"):
        """
        Parameters
        ----------
        kappa : float
            Concentration parameter; larger values smooth less.
        family : str
            Kernel family, one of `CIRCULAR_FAMILIES`.
        """
        if family not in CIRCULAR_FAMILIES:
            raise ValueError("Unknown circular kernel family '{}', "
                             "expected one of {}".format(family,
                                                         CIRCULAR_FAMILIES))
        self._kappa = _positive(kappa, "kappa")
        self._family = family
        # e^κ / (2π I₀(κ)) without overflow
        self._peak = 1 / (2 * np.pi * sps.i0e(self._kappa))

    def __repr__(self):
        return "CircularKernel(kappa={:g}, family='{}')".format(
            self.kappa, self.family)

    def __eq__(self, other):
        return (isinstance(other, CircularKernel)
                and other.kappa == self.kappa and other.family == self.family)

    def __hash__(self):
        return hash(("circular", self.kappa, self.family))

    @property
    def family(self):
        return self._family

    @property
    def kappa(self):
        return self._kappa

    @property
    def is_circular(self):
        return True

    def evaluate(self, u):
        """Normalized von Mises density exp(κ cos u) / (2π I₀(κ))"""
        u = np.asarray(u, dtype=float)
        return _scalar_or_array(
            np.exp(self.kappa * (np.cos(u) - 1)) * self._peak)

    def derivative(self, u, order=1):
        """Closed-form derivative of `evaluate` with respect to `u`"""
        u = np.asarray(u, dtype=float)
        k = self.kappa
        val = np.exp(k * (np.cos(u) - 1)) * self._peak
        if order == 0:
            out = val
        elif order == 1:
            out = -k * np.sin(u) * val
        elif order == 2:
            s = np.sin(u)
            out = (k * k * s * s - k * np.cos(u)) * val
        else:
            raise ValueError("`order` must be 0, 1 or 2, got {}!".format(
                order))
        return _scalar_or_array(out)

    def shift_weight(self, u):
        """Mean shift weight T(u) = exp(-κ(1 - cos u)), with T(0) = 1"""
        u = np.asarray(u, dtype=float)
        return _scalar_or_array(np.exp(-self.kappa * (1 - np.cos(u))))


def make_kernel(smoothing, circular):
    """Kernel of the default family for a circular or linear margin"""
    if circular:
        return CircularKernel(kappa=smoothing)
    return LinearKernel(h=smoothing)
