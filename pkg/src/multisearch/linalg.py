"""Small dense matrix exponential by scaling and squaring of the Taylor series."""
from __future__ import annotations

import math

import numpy as np

_SCALE_TARGET = 0.5
_MAX_TERMS = 64


def expm_taylor(a: np.ndarray) -> np.ndarray:
    """exp(a) for a small square matrix.

    a is scaled by 2**-s so that its 1-norm is at most 0.5, the Taylor series
    is summed until the next term no longer changes the partial sum at double
    precision, and the result is squared s times.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    dim = a.shape[0]
    norm = float(np.abs(a).sum(axis=0).max()) if dim else 0.0
    s = 0 if norm <= _SCALE_TARGET else int(math.ceil(math.log2(norm / _SCALE_TARGET)))
    scaled = a / (2.0**s)

    result = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    for k in range(1, _MAX_TERMS):
        term = term @ scaled / k
        result = result + term
        if np.abs(term).max() <= np.finfo(float).eps * np.abs(result).max():
            break
    for _ in range(s):
        result = result @ result
    return result


def unitary_propagator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for a Hermitian h."""
    return expm_taylor(-1j * t * np.asarray(h, dtype=np.complex128))
