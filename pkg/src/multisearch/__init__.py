"""Simulation and cross-checking toolkit for multiobject quantum search."""
from .core import (
    MAX_DIM,
    NORM_TOL,
    ORTHO_TOL,
    DimensionCapError,
    InvalidInstanceError,
    QuantumState,
    ReducedState,
    SearchInstance,
    lift,
    oracle_eval,
    reduce,
    success_probability,
    uniform_superposition,
)

__version__ = "0.1.0"
