"""Simulation models: mixtures of regression branches"""
import copy

import numpy as np
import sympy

from .. import circular
from ..density import normalize_geometry

#: Predictor laws
PREDICTOR_LAWS = ("uniform_circle", "uniform")

_X = sympy.Symbol("x")


class Branch(object):
    """One regression branch: response = function(x) + noise

    The branch function is a sympy expression in the predictor `x`,
    e.g. "2*sin(x) + 1". The dispersion is the standard deviation σ
    of normal noise (real responses) or the concentration κ of von
    Mises noise (circular responses); σ = 0 or κ = inf draws without
    noise.
    """

    def __init__(self, function, weight, dispersion):
        self.expression = str(function).strip()
        try:
            parsed = sympy.sympify(self.expression, locals={"x": _X})
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ValueError("Branch field `function`: cannot parse "
                             "'{}' ({})".format(self.expression, exc))
        extra = parsed.free_symbols - {_X}
        if extra:
            raise ValueError("Branch field `function`: unknown symbols {} "
                             "in '{}'; only `x` is allowed.".format(
                                 sorted(str(s) for s in extra),
                                 self.expression))
        self._parsed = parsed
        self._func = sympy.lambdify(_X, parsed, modules="numpy")
        self.weight = float(weight)
        if not (np.isfinite(self.weight) and self.weight > 0):
            raise ValueError("Branch field `weight` must be positive, got "
                             "{}!".format(weight))
        self.dispersion = float(dispersion)
        if np.isnan(self.dispersion) or self.dispersion < 0:
            raise ValueError("Branch field `dispersion` must be "
                             "non-negative, got {}!".format(dispersion))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        # constant expressions return scalars
        return np.asarray(self._func(x), dtype=float) + np.zeros_like(x)

    def __repr__(self):
        return "Branch('{}', weight={:g}, dispersion={:g})".format(
            self.expression, self.weight, self.dispersion)

    def to_dict(self):
        return {"function": self.expression,
                "weight": self.weight,
                "dispersion": self.dispersion}


class SimModel(object):
    """Mixture-of-regressions data generating process"""

    def __init__(self, geometry, branches, predictor=None, name="",
                 modelid=None):
        """
        Parameters
        ----------
        geometry : str
            Geometry tag, e.g. "circ_lin".
        branches : list of Branch or dict
            Regression branches. Dicts need the keys `function`,
            `weight` and `dispersion`.
        predictor : dict
            Predictor law, {"law": "uniform_circle"} (default for
            circular predictors) or {"law": "uniform", "low": a,
            "high": b}.
        name : str
            Human readable description.
        modelid : int
            Identifier in the model registry.
        """
        self.geometry = normalize_geometry(geometry)
        self.name = name
        self.id = modelid
        if not branches:
            raise ValueError("A model needs at least one branch!")
        self.branches = [b if isinstance(b, Branch) else Branch(**b)
                         for b in branches]
        total = sum(b.weight for b in self.branches)
        if abs(total - 1) > 1e-8:
            raise ValueError("Branch weights must sum to 1, got "
                             "{}!".format(total))
        self.predictor = self._check_predictor(predictor)
        if self.predictor_is_circular:
            self._check_periodic()

    def __repr__(self):
        text = "SimModel {} ({}, {} branches)".format(
            self.name or self.id, self.geometry, len(self.branches))
        return text

    @property
    def predictor_is_circular(self):
        return self.geometry in ("circ_lin", "circ_circ")

    @property
    def response_is_circular(self):
        return self.geometry in ("lin_circ", "circ_circ")

    @property
    def weights(self):
        return np.array([b.weight for b in self.branches])

    @property
    def dispersions(self):
        return np.array([b.dispersion for b in self.branches])

    def _check_predictor(self, predictor):
        if predictor is None:
            if not self.predictor_is_circular:
                raise ValueError("Field `predictor` is required for "
                                 "linear predictors!")
            predictor = {"law": "uniform_circle"}
        predictor = dict(predictor)
        law = predictor.get("law")
        if law not in PREDICTOR_LAWS:
            raise ValueError("Field `predictor.law` must be one of {}, got "
                             "{!r}!".format(PREDICTOR_LAWS, law))
        if self.predictor_is_circular and law != "uniform_circle":
            raise ValueError("Field `predictor.law` must be "
                             "'uniform_circle' for circular predictors!")
        if not self.predictor_is_circular:
            if law != "uniform":
                raise ValueError("Field `predictor.law` must be 'uniform' "
                                 "for linear predictors!")
            try:
                low = float(predictor["low"])
                high = float(predictor["high"])
            except (KeyError, TypeError, ValueError):
                raise ValueError("Fields `predictor.low` and "
                                 "`predictor.high` must be numbers!")
            if not (np.isfinite(low) and np.isfinite(high) and low < high):
                raise ValueError("Field `predictor` needs low < high, got "
                                 "[{}, {}]!".format(low, high))
            predictor["low"] = low
            predictor["high"] = high
        return predictor

    def _check_periodic(self):
        theta = np.linspace(-np.pi, np.pi, 33)
        for b in self.branches:
            diff = b(theta + 2 * np.pi) - b(theta)
            if self.response_is_circular:
                # congruent modulo 2π is enough for angles
                diff = np.sin(diff / 2)
            if not np.allclose(diff, 0, atol=1e-9):
                raise ValueError("Branch field `function`: '{}' is not "
                                 "2π-periodic in x!".format(b.expression))

    def branch_values(self, x):
        """Array (len(x), n_branches) of branch function values"""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        vals = np.stack([b(x) for b in self.branches], axis=-1)
        if self.response_is_circular:
            vals = circular.wrap(vals)
        return vals

    def copy(self):
        return copy.deepcopy(self)

    def to_dict(self):
        """Dictionary in the YAML model file layout"""
        return {"geometry": self.geometry,
                "name": self.name,
                "predictor": dict(self.predictor),
                "branches": [b.to_dict() for b in self.branches]}

    @classmethod
    def from_dict(cls, data):
        """Build a model from the YAML model file layout"""
        if not isinstance(data, dict):
            raise ValueError("A model definition must be a mapping!")
        for key in ("geometry", "branches"):
            if key not in data:
                raise ValueError("Missing model field `{}`!".format(key))
        if not isinstance(data["branches"], list):
            raise ValueError("Field `branches` must be a list!")
        branches = []
        for ii, item in enumerate(data["branches"]):
            if not isinstance(item, dict):
                raise ValueError("Field `branches[{}]` must be a "
                                 "mapping!".format(ii))
            missing = {"function", "weight", "dispersion"} - set(item)
            if missing:
                raise ValueError("Missing field(s) {} in `branches[{}]`!"
                                 .format(sorted(missing), ii))
            branches.append(Branch(item["function"], item["weight"],
                                   item["dispersion"]))
        return cls(geometry=data["geometry"],
                   branches=branches,
                   predictor=data.get("predictor"),
                   name=data.get("name", ""))
