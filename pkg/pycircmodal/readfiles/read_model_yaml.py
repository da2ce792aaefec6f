"""YAML simulation model definitions"""
import pathlib

import yaml

from ..simulate import SimModel, get_model


def open_model(path):
    """Load a simulation model from a YAML file looking like this:

        geometry: circ_lin
        name: two sines
        predictor: {law: uniform_circle}
        branches:
          - {function: "sin(x) + 1.2", weight: 0.5, dispersion: 0.25}
          - {function: "sin(x) - 1.2", weight: 0.5, dispersion: 0.25}

    A file containing only `model: <id>` refers to a built-in model.
    Invalid definitions raise a `ValueError` naming the field.
    """
    path = pathlib.Path(path)
    with path.open("r", encoding="utf-8") as fd:
        try:
            data = yaml.safe_load(fd)
        except yaml.YAMLError as exc:
            raise ValueError("{} is not valid YAML: {}".format(path, exc))
    if isinstance(data, dict) and set(data) == {"model"}:
        return get_model(data["model"])
    model = SimModel.from_dict(data)
    if not model.name:
        model.name = path.stem
    return model
