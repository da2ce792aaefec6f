"""Circular predictor, circular response"""
from .control import model_setup

model_setup(
    modelid=3001,
    name="unimodal rotation (circ-circ)",
    geometry="circ_circ",
    branches=[{"function": "x + sin(x)/2", "weight": 1.0,
               "dispersion": 15.0}],
)

model_setup(
    modelid=3002,
    name="bimodal antipodal rotation (circ-circ)",
    geometry="circ_circ",
    branches=[{"function": "x + sin(x)/2", "weight": 0.5,
               "dispersion": 15.0},
              {"function": "x + sin(x)/2 + pi", "weight": 0.5,
               "dispersion": 15.0}],
)
