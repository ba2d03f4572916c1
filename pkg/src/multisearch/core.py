"""Search instances, state vectors and the two-dimensional working plane.

Indices are 1-based everywhere in the public API.  The marked set is stored
on :class:`SearchInstance`, but every operator that needs to know which basis
states are marked asks :func:`oracle_eval` instead of reading it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

NORM_TOL = 1e-12
ORTHO_TOL = 1e-14
MAX_DIM = 2**14


class InvalidInstanceError(ValueError):
    """Raised when (n, marked) violates 1 <= ell < n or the index range."""


class DimensionCapError(ValueError):
    """Raised when a full-space simulation would exceed the dimension cap."""


class NormalizationError(ValueError):
    pass


@dataclass(frozen=True)
class SearchInstance:
    n: int
    marked: tuple[int, ...]

    def __post_init__(self) -> None:
        marked = tuple(int(j) for j in self.marked)
        object.__setattr__(self, "marked", marked)
        if self.n < 2:
            raise InvalidInstanceError(f"need n >= 2, got n={self.n}")
        if len(set(marked)) != len(marked):
            raise InvalidInstanceError(f"marked indices must be distinct: {marked}")
        if not 1 <= len(marked) < self.n:
            raise InvalidInstanceError(
                f"violates 1 <= ell < n: ell={len(marked)}, n={self.n}"
            )
        bad = [j for j in marked if not 1 <= j <= self.n]
        if bad:
            raise InvalidInstanceError(f"marked indices outside 1..{self.n}: {bad}")

    @property
    def ell(self) -> int:
        return len(self.marked)

    @classmethod
    def first(cls, n: int, ell: int) -> "SearchInstance":
        """Instance with marked = {1, ..., ell}."""
        if ell < 1:
            raise InvalidInstanceError(f"violates 1 <= ell < n: ell={ell}, n={n}")
        return cls(n, tuple(range(1, ell + 1)))

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "SearchInstance":
        return cls(n, tuple(indices))


def check_dimension(n: int, max_dim: int = MAX_DIM) -> None:
    if n > max_dim:
        raise DimensionCapError(f"n={n} exceeds the full-space cap {max_dim}")


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Unit-norm complex amplitude vector; amplitudes are stored read-only."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be one-dimensional")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"state not normalized: |psi|^2 = {norm2!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def _unchecked(cls, amps: np.ndarray) -> "QuantumState":
        # for images of unitary maps; norm drift is checked by the test suite
        obj = object.__new__(cls)
        amps = np.asarray(amps, dtype=np.complex128)
        amps.flags.writeable = False
        object.__setattr__(obj, "amplitudes", amps)
        return obj

    @classmethod
    def basis(cls, n: int, j: int) -> "QuantumState":
        amps = np.zeros(n, dtype=np.complex128)
        amps[j - 1] = 1.0
        return cls(amps)

    @property
    def n(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class ReducedState:
    """Coordinates (a, b) on the orthonormal pair (|w~>, |r>)."""

    a: complex
    b: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        norm2 = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"reduced state not normalized: {norm2!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=np.complex128)


def oracle_eval(instance: SearchInstance, j: int) -> int:
    """The Boolean oracle f(w_j): 1 if j is marked, else 0."""
    if not 1 <= j <= instance.n:
        raise IndexError(f"index {j} outside 1..{instance.n}")
    return 1 if j in instance.marked else 0


@lru_cache(maxsize=64)
def _oracle_table(instance: SearchInstance) -> np.ndarray:
    table = np.fromiter(
        (oracle_eval(instance, j) for j in range(1, instance.n + 1)),
        dtype=np.int8,
        count=instance.n,
    )
    table.flags.writeable = False
    return table


def oracle_table(instance: SearchInstance) -> np.ndarray:
    """f(w_j) for j = 1..n as a 0/1 vector (0-based storage).

    One oracle query per basis element, cached per instance.
    """
    return _oracle_table(instance)


def marked_positions(instance: SearchInstance) -> np.ndarray:
    """0-based storage positions of the basis states the oracle flags."""
    return np.flatnonzero(oracle_table(instance))


def uniform_superposition(instance: SearchInstance) -> QuantumState:
    n = instance.n
    return QuantumState(np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128))


def w_tilde(instance: SearchInstance) -> np.ndarray:
    """Normalized uniform combination of the marked basis states."""
    f = oracle_table(instance).astype(np.float64)
    return (f / math.sqrt(f.sum())).astype(np.complex128)


def r_vector(instance: SearchInstance) -> np.ndarray:
    """Normalized part of the uniform superposition orthogonal to L.

    Phase convention: positive real coefficients on the unmarked states.
    """
    f = oracle_table(instance)
    unmarked = (1 - f).astype(np.float64)
    return (unmarked / math.sqrt(unmarked.sum())).astype(np.complex128)


def reduce(
    state: QuantumState, instance: SearchInstance
) -> tuple[ReducedState, float]:
    """Project onto span{|w~>, |r>}.

    Returns the coordinates and the norm of the component outside the plane.
    The coordinates are renormalized only when the residual is negligible; if
    the state leaves the plane, (a, b) are returned as raw overlaps.
    """
    psi = state.amplitudes
    w = w_tilde(instance)
    r = r_vector(instance)
    a = complex(np.vdot(w, psi))
    b = complex(np.vdot(r, psi))
    outside = psi - a * w - b * r
    residual = float(np.linalg.norm(outside))
    norm2 = abs(a) ** 2 + abs(b) ** 2
    if abs(norm2 - 1.0) <= NORM_TOL:
        return ReducedState(a, b), residual
    # off-plane component: bypass normalization check for the raw overlaps
    red = object.__new__(ReducedState)
    object.__setattr__(red, "a", a)
    object.__setattr__(red, "b", b)
    return red, residual


def lift(reduced: ReducedState, instance: SearchInstance) -> QuantumState:
    amps = reduced.a * w_tilde(instance) + reduced.b * r_vector(instance)
    return QuantumState(amps)


def success_probability(state: QuantumState, instance: SearchInstance) -> float:
    """Probability that a measurement collapses into the marked subspace."""
    f = oracle_table(instance).astype(bool)
    p = float(np.sum(np.abs(state.amplitudes[f]) ** 2))
    return min(max(p, 0.0), 1.0)
