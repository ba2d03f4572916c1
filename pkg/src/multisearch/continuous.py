"""Continuous-time multiobject search with H = E * P_L + E |s><s|.

The full Hamiltonian has rank ell + 1 and vanishes on the orthogonal
complement of span(L + {s}); :func:`propagate` therefore exponentiates only the
(ell+1) x (ell+1) block and passes the rest of the vector through unchanged.
With the uniform start the dynamics reduce further to the plane
span{|w~>, |r>}, where everything is closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    MAX_DIM,
    NORM_TOL,
    QuantumState,
    ReducedState,
    SearchInstance,
    check_dimension,
    marked_positions,
    oracle_eval,
    success_probability,
    uniform_superposition,
)
from .linalg import unitary_propagator

DENSE_MAX_DIM = 2**12
BOUND_TOL = 1e-8


class DegenerateStartError(ValueError):
    """The start vector lies in span(L), so |r> is undefined."""


class UnsupportedStartError(ValueError):
    pass


class PartitionError(ValueError):
    """ell does not divide n, so the basis cannot be cut into n/ell blocks."""


@dataclass(frozen=True)
class HamiltonianSpec:
    instance: SearchInstance
    energy: float = 1.0
    start: QuantumState | None = None

    def __post_init__(self) -> None:
        if not self.energy > 0:
            raise ValueError(f"energy must be positive, got {self.energy}")
        if self.start is None:
            object.__setattr__(self, "start", uniform_superposition(self.instance))
        elif self.start.n != self.instance.n:
            raise ValueError(
                f"start has length {self.start.n}, instance has n={self.instance.n}"
            )
        in_l = self.start.amplitudes[marked_positions(self.instance)]
        if float(np.linalg.norm(in_l)) >= 1.0 - NORM_TOL:
            raise DegenerateStartError("start vector lies in span(L)")

    @property
    def y(self) -> float:
        return math.sqrt(self.instance.ell / self.instance.n)

    @property
    def uniform_start(self) -> bool:
        n = self.instance.n
        return bool(np.allclose(self.start.amplitudes, 1.0 / math.sqrt(n), atol=1e-14, rtol=0))


@dataclass(frozen=True)
class GeneralReducedMatrix:
    """H restricted to span(L + {s}) on the basis (|w_1>, ..., |w_ell>, |r>)."""

    entries: np.ndarray
    overlaps: np.ndarray
    c_r: float

    def __post_init__(self) -> None:
        h = self.entries
        if not np.allclose(h, h.conj().T, atol=1e-12, rtol=0):
            raise ValueError("reduced matrix is not Hermitian")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class EvolutionSample:
    t: float
    reduced: ReducedState
    probability: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "probability", abs(self.reduced.a) ** 2)


def build_full_hamiltonian(spec: HamiltonianSpec, max_dim: int = DENSE_MAX_DIM) -> np.ndarray:
    """Dense n x n Hamiltonian.  H_L is assembled column by column from oracle calls."""
    inst = spec.instance
    check_dimension(inst.n, max_dim)
    e = spec.energy
    h_l = np.zeros((inst.n, inst.n), dtype=np.complex128)
    for j in range(1, inst.n + 1):
        # E/2 (|w_j> - (-1)^f(w_j) |w_j>)
        h_l[j - 1, j - 1] = 0.5 * e * (1 - (-1) ** oracle_eval(inst, j))
    s = spec.start.amplitudes
    return h_l + e * np.outer(s, s.conj())


def _residual_direction(spec: HamiltonianSpec) -> tuple[np.ndarray, np.ndarray, float]:
    """(overlaps x_i = <s|w_i>, unit |r>, C_r) for the configured start vector."""
    s = spec.start.amplitudes
    pos = marked_positions(spec.instance)
    x = s[pos].conj()
    c_r2 = 1.0 - float(np.sum(np.abs(x) ** 2))
    if c_r2 <= NORM_TOL:
        raise DegenerateStartError("C_r = 0: start vector lies in span(L)")
    c_r = math.sqrt(c_r2)
    r = s.copy()
    r[pos] = 0.0
    return x, r / c_r, c_r


def general_reduced_matrix(spec: HamiltonianSpec) -> GeneralReducedMatrix:
    x, _, c_r = _residual_direction(spec)
    ell = x.shape[0]
    e = spec.energy
    h = np.empty((ell + 1, ell + 1), dtype=np.complex128)
    h[:ell, :ell] = np.outer(x.conj(), x) + np.eye(ell)
    h[ell, :ell] = x * c_r
    h[:ell, ell] = x.conj() * c_r
    h[ell, ell] = c_r**2
    return GeneralReducedMatrix(entries=e * h, overlaps=x, c_r=c_r)


def reduced_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    """2 x 2 real symmetric H on (|w~>, |r>); uniform start only."""
    if not spec.uniform_start:
        raise UnsupportedStartError("reduced_hamiltonian needs the uniform start")
    n, ell = spec.instance.n, spec.instance.ell
    off = math.sqrt(ell * (n - ell)) / n
    return spec.energy * np.array([[1 + ell / n, off], [off, 1 - ell / n]])


def evolve_reduced(spec: HamiltonianSpec, t: float) -> ReducedState:
    if not spec.uniform_start:
        raise UnsupportedStartError("evolve_reduced needs the uniform start")
    if t < 0:
        raise ValueError("t must be nonnegative")
    e, y = spec.energy, spec.y
    phase = np.exp(-1j * e * t)
    c, s = math.cos(e * y * t), math.sin(e * y * t)
    a = phase * (y * c - 1j * s)
    b = phase * math.sqrt(1 - y * y) * c
    return ReducedState(a, b)


def propagate(
    spec: HamiltonianSpec, t: float, state: QuantumState, max_dim: int = MAX_DIM
) -> QuantumState:
    """Apply exp(-iHt) to an arbitrary state.

    Only the (ell+1)-dimensional block is exponentiated; the component of
    ``state`` orthogonal to span(L + {s}) is left untouched.
    """
    check_dimension(spec.instance.n, max_dim)
    if t < 0:
        raise ValueError("t must be nonnegative")
    pos = marked_positions(spec.instance)
    _, r, _ = _residual_direction(spec)
    block = general_reduced_matrix(spec).entries

    psi = state.amplitudes
    coeffs = np.empty(len(pos) + 1, dtype=np.complex128)
    coeffs[:-1] = psi[pos]
    coeffs[-1] = np.vdot(r, psi)
    passthrough = psi.copy()
    passthrough[pos] = 0.0
    passthrough -= coeffs[-1] * r

    new = unitary_propagator(block, t) @ coeffs
    out = passthrough + new[-1] * r
    out[pos] += new[:-1]
    return QuantumState._unchecked(out)


def evolve_full(spec: HamiltonianSpec, t: float, max_dim: int = MAX_DIM) -> QuantumState:
    if t == 0:
        return spec.start
    return propagate(spec, t, spec.start, max_dim=max_dim)


def closed_form_probability(spec: HamiltonianSpec, t: float) -> float:
    e, y = spec.energy, spec.y
    return math.sin(e * y * t) ** 2 + y * y * math.cos(e * y * t) ** 2


def probability_curve(spec: HamiltonianSpec, t_grid: Sequence[float]) -> list[EvolutionSample]:
    return [EvolutionSample(float(t), evolve_reduced(spec, float(t))) for t in t_grid]


def optimal_time(spec: HamiltonianSpec) -> float:
    """Time at which P(t) first reaches 1."""
    if not spec.uniform_start:
        raise UnsupportedStartError("optimal_time needs the uniform start")
    return math.pi / (2 * spec.energy) * math.sqrt(spec.instance.n / spec.instance.ell)


def lower_bound(n: int, ell: int, energy: float) -> float:
    """Minimum search time (1 - ratio**-1/2) * sqrt(ratio) / E with ratio = n / ell."""
    ratio = n / ell
    if ratio < 1:
        raise ValueError(f"need n/ell >= 1, got {ratio}")
    return (1 - ratio**-0.5) * math.sqrt(ratio) / energy


@dataclass(frozen=True)
class LowerBoundInequality:
    lhs: float
    middle: float
    rhs: float
    holds: bool
    blocks: int
    t_final: float
    terminal_leak: float


def verify_lower_bound_inequality(
    n: int, ell: int, energy: float = 1.0, t_final: float | None = None, tol: float = BOUND_TOL
) -> LowerBoundInequality:
    """Check 2N~ - 2 sqrt(N~) <= sum_k |psi_Lk(T) - psi(T)|^2 <= 2 E sqrt(N~) T.

    The basis is cut into N~ = n/ell consecutive blocks of ell states.  For
    each block the search dynamics H_Lk + E|s><s| are simulated from the
    uniform state; the comparison dynamics use E|s><s| alone.  ``t_final``
    defaults to the optimal time, at which every psi_Lk lands in L_k
    (``terminal_leak`` reports how far it misses).
    """
    if ell < 1 or n < ell:
        raise ValueError(f"need 1 <= ell <= n, got n={n}, ell={ell}")
    if n % ell:
        raise PartitionError(f"ell={ell} does not divide n={n}")
    blocks = n // ell
    t = (math.pi / (2 * energy)) * math.sqrt(blocks) if t_final is None else t_final
    lhs = 2 * blocks - 2 * math.sqrt(blocks)
    rhs = 2 * energy * math.sqrt(blocks) * t
    if blocks == 1:
        # L is the whole space: H = E(I + |s><s|), so the two solutions differ
        # by the scalar phase exp(-iEt)
        middle = 2 - 2 * math.cos(energy * t)
        return LowerBoundInequality(lhs, middle, rhs, lhs <= middle + tol and middle <= rhs + tol, 1, t, 0.0)

    check_dimension(n)
    s = np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)
    # |s> is an eigenvector of E|s><s| with eigenvalue E
    psi = np.exp(-1j * energy * t) * s

    middle = 0.0
    leak = 0.0
    for k in range(blocks):
        inst = SearchInstance(n, tuple(range(k * ell + 1, (k + 1) * ell + 1)))
        spec = HamiltonianSpec(inst, energy)
        psi_k = evolve_full(spec, t).amplitudes
        middle += float(np.sum(np.abs(psi_k - psi) ** 2))
        leak = max(leak, 1.0 - success_probability(QuantumState._unchecked(psi_k), inst))
    holds = lhs <= middle + tol and middle <= rhs + tol
    return LowerBoundInequality(lhs, middle, rhs, holds, blocks, t, leak)
