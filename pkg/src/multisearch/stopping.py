"""Restart schedule for Grover search.

Run j iterations, measure, restart on failure.  With per-run success
probability cos^2(j theta - alpha) the expected total number of iterations is
E(j) = j sec^2(j theta - alpha); its stationary point satisfies
2 j theta = -cot(j theta - alpha).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .discrete import GroverAngles, grover_angles


class InfiniteCostError(ValueError):
    """Per-run success probability is zero, so E(j) diverges."""


class WindowError(ValueError):
    pass


class FixedPointDivergence(RuntimeError):
    def __init__(self, message: str, history: list[float]):
        super().__init__(message)
        self.history = history


@dataclass(frozen=True)
class StoppingProblem:
    theta: float
    alpha: float

    def __post_init__(self) -> None:
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")
        if not 0 < self.alpha < math.pi / 2:
            raise ValueError(f"alpha must lie in (0, pi/2), got {self.alpha}")

    @classmethod
    def from_angles(cls, angles: GroverAngles) -> "StoppingProblem":
        return cls(angles.theta, angles.alpha)

    @classmethod
    def from_search(cls, n: int, ell: int) -> "StoppingProblem":
        return cls.from_angles(grover_angles(n, ell))

    @property
    def window(self) -> int:
        """Upper end of the integer search window, ceil(alpha / theta)."""
        return math.ceil(self.alpha / self.theta)


@dataclass(frozen=True)
class StoppingSolution:
    j_real: float | None
    j_first_order: float | None
    j_int: int
    e_at_j_int: float
    residual: float | None
    iterations: int = 0
    history: tuple[float, ...] = field(default=(), repr=False)

    def as_dict(self) -> dict:
        return {
            "j_real": self.j_real,
            "j_first_order": self.j_first_order,
            "j_int": self.j_int,
            "e_at_j_int": self.e_at_j_int,
            "residual": self.residual,
            "iterations": self.iterations,
        }


def expected_cost(j: float, problem: StoppingProblem) -> float:
    """j / cos^2(j theta - alpha)."""
    if j <= 0:
        raise ValueError("j must be positive")
    c = math.cos(j * problem.theta - problem.alpha)
    if abs(c) <= 1e-15:
        raise InfiniteCostError(f"cos(j theta - alpha) = {c!r} at j={j}")
    return j / (c * c)


def stationarity_residual(j: float, problem: StoppingProblem) -> float:
    x = j * problem.theta - problem.alpha
    return abs(2 * j * problem.theta + math.cos(x) / math.sin(x))


def exponential_form_residual(j: float, problem: StoppingProblem) -> float:
    """|exp(2i(theta j - alpha)) - (2i theta j + 1)/(2i theta j - 1)|."""
    z = 2j * problem.theta * j
    lhs = np.exp(2j * (problem.theta * j - problem.alpha))
    return float(abs(lhs - (z + 1) / (z - 1)))


def solve_first_order(problem: StoppingProblem) -> float | None:
    """j1 = (alpha + sqrt(alpha^2 - 2)) / (2 theta), or None when alpha^2 < 2."""
    disc = problem.alpha**2 - 2
    if disc < 0:
        return None
    return (problem.alpha + math.sqrt(disc)) / (2 * problem.theta)


def brute_force_optimum(problem: StoppingProblem, upper: int | None = None) -> tuple[int, float]:
    """Exact integer argmin of E(j) for j in 1..ceil(alpha / theta)."""
    hi = problem.window if upper is None else upper
    if hi < 1:
        raise WindowError(f"empty search window [1, {hi}]")
    j = np.arange(1, hi + 1, dtype=np.float64)
    cos2 = np.cos(j * problem.theta - problem.alpha) ** 2
    with np.errstate(divide="ignore"):
        cost = np.where(cos2 > 1e-30, j / np.where(cos2 > 1e-30, cos2, 1.0), np.inf)
    best = int(np.argmin(cost))
    return best + 1, float(cost[best])


def solve_fixed_point(
    problem: StoppingProblem, tol: float = 1e-12, max_iter: int = 200
) -> StoppingSolution:
    """Iterate j <- (alpha - arctan(1 / (2 theta j))) / theta to the root.

    Seeded from the first-order solution when it is real, else alpha/(2 theta).
    Convergence is declared when successive iterates agree to
    ``tol * max(1, j)``.  Raises :class:`FixedPointDivergence` (with the
    iterate history) if that does not happen within ``max_iter`` steps or an
    iterate leaves j > 0.
    """
    th, al = problem.theta, problem.alpha
    j1 = solve_first_order(problem)
    j = j1 if j1 is not None else al / (2 * th)
    history = [j]
    for it in range(1, max_iter + 1):
        if not j > 0:
            raise FixedPointDivergence(f"iterate left j > 0 at step {it}: {j!r}", history)
        nxt = (al - math.atan(1.0 / (2 * th * j))) / th
        history.append(nxt)
        if abs(nxt - j) < tol * max(1.0, abs(j)):
            j = nxt
            break
        j = nxt
    else:
        raise FixedPointDivergence(f"no convergence after {max_iter} iterations", history)
    if not j > 0:
        raise FixedPointDivergence(f"converged to non-positive j={j!r}", history)

    j_int, e_int = brute_force_optimum(problem)
    return StoppingSolution(
        j_real=j,
        j_first_order=j1,
        j_int=j_int,
        e_at_j_int=e_int,
        residual=stationarity_residual(j, problem),
        iterations=len(history) - 1,
        history=tuple(history),
    )


def solve(problem: StoppingProblem, tol: float = 1e-12, max_iter: int = 200) -> StoppingSolution:
    """First-order seed, then fixed point, then brute force; failures fall through."""
    try:
        return solve_fixed_point(problem, tol=tol, max_iter=max_iter)
    except FixedPointDivergence:
        j_int, e_int = brute_force_optimum(problem)
        return StoppingSolution(
            j_real=None,
            j_first_order=solve_first_order(problem),
            j_int=j_int,
            e_at_j_int=e_int,
            residual=None,
        )
