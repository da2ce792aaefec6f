"""Real predictor, circular response"""
from .control import model_setup

model_setup(
    modelid=2001,
    name="unimodal linear drift (lin-circ)",
    geometry="lin_circ",
    branches=[{"function": "pi*x/2", "weight": 1.0, "dispersion": 20.0}],
    predictor={"law": "uniform", "low": -1.0, "high": 1.0},
)

# Antipodal branches
model_setup(
    modelid=2002,
    name="bimodal antipodal drift (lin-circ)",
    geometry="lin_circ",
    branches=[{"function": "x", "weight": 0.5, "dispersion": 10.0},
              {"function": "x + pi", "weight": 0.5, "dispersion": 10.0}],
    predictor={"law": "uniform", "low": -1.5, "high": 1.5},
)
