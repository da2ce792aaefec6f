"""pycircmodal.simulate.control

Registry of built-in simulation models; model modules register
themselves with `model_setup`.
"""
from .classes import SimModel


def append_model(model):
    """Add a `SimModel` (or a list of models) to the registry"""
    if not isinstance(model, list):
        model = [model]
    for amod in model:
        if amod.id in modeldict:
            raise ValueError("Model with same id already exists: \n {} vs. {}"
                             .format(amod, modeldict[amod.id]))
        models.append(amod)
        modeldict[amod.id] = amod
        geometries.setdefault(amod.geometry, []).append(amod.id)


def model_setup(modelid, name, geometry, branches, predictor=None):
    """Create a simulation model and make it available by `modelid`

    Parameters
    ----------
    modelid : int
        Model identifier.
    name : str
        Description of the model.
    geometry : str
        Geometry tag.
    branches : list of dict
        Each with `function` (sympy expression in x), `weight` and
        `dispersion`.
    predictor : dict
        Predictor law, see `SimModel`.
    """
    model = SimModel(geometry=geometry, branches=branches,
                     predictor=predictor, name=name, modelid=modelid)
    append_model(model)
    return model


def get_model(modelid):
    """Registered model with identifier `modelid`"""
    try:
        return modeldict[int(modelid)]
    except (KeyError, ValueError):
        raise ValueError("Unknown model id {!r}; available: {}".format(
            modelid, sorted(modeldict)))


# All registered models
models = list()
# Dictionary with model id as key
modeldict = dict()
# Model ids by geometry
geometries = dict()

# Model modules call `model_setup` on import.
from . import models_circ_lin  # noqa: E402,F401
from . import models_lin_circ  # noqa: E402,F401
from . import models_circ_circ  # noqa: E402,F401
