"""Circular predictor, real response"""
from .control import model_setup

# Single curve with normal noise
model_setup(
    modelid=1001,
    name="unimodal sine (circ-lin)",
    geometry="circ_lin",
    branches=[{"function": "2*sin(x)", "weight": 1.0, "dispersion": 0.3}],
)

# Two parallel branches 2.4 apart with σ = 0.25. A response bandwidth
# of 0.6 resolves both branches and 1.5 merges them.
model_setup(
    modelid=1002,
    name="bimodal parallel sines (circ-lin)",
    geometry="circ_lin",
    branches=[{"function": "sin(x) + 1.2", "weight": 0.5,
               "dispersion": 0.25},
              {"function": "sin(x) - 1.2", "weight": 0.5,
               "dispersion": 0.25}],
)

# Crossing branches
model_setup(
    modelid=1003,
    name="bimodal crossing cosines (circ-lin)",
    geometry="circ_lin",
    branches=[{"function": "2*cos(x)", "weight": 0.5, "dispersion": 0.2},
              {"function": "-2*cos(x)", "weight": 0.5, "dispersion": 0.2}],
)

# Noisy parallel branches 2.4 apart with σ = 0.5 and a double-frequency
# curve. With n = 200 and κ = 30 the response bandwidth 1.5 merges the
# branches, 0.5 resolves them and 0.2 produces spurious modes. With
# n = 400 and h = 0.6, κ = 5 flattens the curves and κ = 300 roughens
# them.
model_setup(
    modelid=1004,
    name="noisy bimodal double-frequency sines (circ-lin)",
    geometry="circ_lin",
    branches=[{"function": "sin(2*x) + 1.2", "weight": 0.5,
               "dispersion": 0.5},
              {"function": "sin(2*x) - 1.2", "weight": 0.5,
               "dispersion": 0.5}],
)
