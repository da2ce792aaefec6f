"""Synthetic data and ground-truth modes for all three geometries"""
# flake8: noqa: F401
from .classes import Branch, SimModel, PREDICTOR_LAWS
from .control import get_model, model_setup, modeldict, models
from .generate import draw
from .oracle import (ORACLE_GRID_SIZE, conditional_density, grid_modes,
                     oracle_modes, oracle_multifunction)
