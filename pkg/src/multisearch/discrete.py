"""Generalized Grover iteration U = -I_s I_L for ell marked items."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    MAX_DIM,
    QuantumState,
    SearchInstance,
    check_dimension,
    marked_positions,
    oracle_table,
    r_vector,
    success_probability,
    uniform_superposition,
)


@dataclass(frozen=True)
class GroverAngles:
    theta: float
    alpha: float

    @classmethod
    def of(cls, instance: SearchInstance) -> "GroverAngles":
        return grover_angles(instance.n, instance.ell)


def grover_angles(n: int, ell: int) -> GroverAngles:
    """Rotation angle of U on the working plane and the initial angle.

    theta = arcsin(2 sqrt(ell (n - ell)) / n); alpha = arccos(sqrt(ell / n)).
    For ell > n/2 the arcsin branch is the wrong one (cos theta would be
    negative), so theta is taken from arccos((n - 2 ell) / n) instead, which
    agrees with the arcsin on 2 ell <= n.
    """
    theta = math.acos((n - 2 * ell) / n)
    alpha = math.acos(math.sqrt(ell / n))
    return GroverAngles(theta, alpha)


@dataclass(frozen=True)
class IterationTrace:
    m: tuple[int, ...]
    p_full: tuple[float, ...]
    p_closed: tuple[float, ...]

    def rows(self) -> list[tuple[int, float, float]]:
        return list(zip(self.m, self.p_full, self.p_closed))

    def max_abs_error(self) -> float:
        return max(abs(a - b) for a, b in zip(self.p_full, self.p_closed))


def oracle_phases(instance: SearchInstance) -> np.ndarray:
    """(-1)^f(w_j) for every basis state."""
    return 1.0 - 2.0 * oracle_table(instance)


def apply_oracle_reflection(state: QuantumState, instance: SearchInstance) -> QuantumState:
    return QuantumState._unchecked(state.amplitudes * oracle_phases(instance))


def apply_diffusion(state: QuantumState, instance: SearchInstance | None = None) -> QuantumState:
    """I - 2|s><s| as mean subtraction: a_j -> a_j - 2 mean(a)."""
    amps = state.amplitudes
    return QuantumState._unchecked(amps - 2.0 * amps.mean())


def grover_step(state: QuantumState, instance: SearchInstance) -> QuantumState:
    amps = state.amplitudes * oracle_phases(instance)
    return QuantumState._unchecked(2.0 * amps.mean() - amps)


def closed_form_probability(instance: SearchInstance, m: int) -> float:
    """cos^2(m theta - alpha): success probability after m iterations from |s>."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    ang = grover_angles(instance.n, instance.ell)
    return math.cos(m * ang.theta - ang.alpha) ** 2


def iterate(instance: SearchInstance, m_max: int, max_dim: int = MAX_DIM) -> IterationTrace:
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    check_dimension(instance.n, max_dim)
    state = uniform_superposition(instance)
    ms, full, closed = [], [], []
    for m in range(m_max + 1):
        if m:
            state = grover_step(state, instance)
        ms.append(m)
        full.append(success_probability(state, instance))
        closed.append(closed_form_probability(instance, m))
    return IterationTrace(tuple(ms), tuple(full), tuple(closed))


def optimal_iterations(instance: SearchInstance) -> tuple[int, float]:
    """Integer m maximizing cos^2(m theta - alpha) over 0..ceil(pi / theta)."""
    ang = grover_angles(instance.n, instance.ell)
    m = np.arange(0, math.ceil(math.pi / ang.theta) + 1)
    p = np.cos(m * ang.theta - ang.alpha) ** 2
    best = int(np.argmax(p))
    return int(m[best]), float(p[best])


def subspace_matrices(instance: SearchInstance) -> tuple[np.ndarray, np.ndarray]:
    """I_s and U restricted to span(L + {s}) on (|w_1>, ..., |w_ell>, |r>).

    Built by applying the operators to the basis vectors and taking overlaps,
    so the result is independent of any closed-form entry formula.
    """
    n = instance.n
    pos = marked_positions(instance)
    basis = np.zeros((n, len(pos) + 1), dtype=np.complex128)
    basis[pos, np.arange(len(pos))] = 1.0
    basis[:, -1] = r_vector(instance)

    def image(op, col: np.ndarray) -> np.ndarray:
        return op(QuantumState._unchecked(col)).amplitudes

    i_s = np.column_stack([image(apply_diffusion, basis[:, k]) for k in range(basis.shape[1])])
    u = np.column_stack(
        [image(lambda st: grover_step(st, instance), basis[:, k]) for k in range(basis.shape[1])]
    )
    return basis.conj().T @ i_s, basis.conj().T @ u
