"""Named property suites: each check returns a :class:`Check` with a verdict.

The CLI ``verify`` command runs these; the test suite runs them too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import classical, continuous, discrete, stopping
from .core import (
    NORM_TOL,
    ORTHO_TOL,
    QuantumState,
    ReducedState,
    SearchInstance,
    lift,
    r_vector,
    reduce,
    success_probability,
    uniform_superposition,
    w_tilde,
)
from .linalg import unitary_propagator


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    value: float
    bound: float
    detail: str = ""


def _random_state(rng: np.random.Generator, n: int) -> QuantumState:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return QuantumState(v / np.linalg.norm(v))


def _random_reduced(rng: np.random.Generator) -> ReducedState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return ReducedState(v[0], v[1])


def _orth_to_plane(rng: np.random.Generator, inst: SearchInstance) -> np.ndarray:
    """Random unit vector orthogonal to span(L + {s}) for the uniform s."""
    n = inst.n
    f = np.zeros(n)
    f[np.array(inst.marked) - 1] = 1
    u = rng.normal(size=n) + 1j * rng.normal(size=n)
    u[f == 1] = 0.0
    u -= u.mean() * (1 - f) * n / (n - inst.ell)  # remove the |r> direction
    u[f == 1] = 0.0
    return u / np.linalg.norm(u)


def _le(suite: str, name: str, value: float, bound: float, detail: str = "") -> Check:
    return Check(suite, name, bool(value <= bound), float(value), float(bound), detail)


# --- state-core -----------------------------------------------------------


def state_suite(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    worst_norm = 0.0
    worst_ortho = 0.0
    worst_round = 0.0
    worst_prob = 0.0
    for n, ell in [(2, 1), (4, 1), (8, 2), (16, 5), (64, 1), (100, 37)]:
        marked = tuple(sorted(rng.choice(np.arange(1, n + 1), size=ell, replace=False).tolist()))
        inst = SearchInstance(n, marked)
        worst_norm = max(worst_norm, abs(uniform_superposition(inst).norm() ** 2 - 1))
        w, r = w_tilde(inst), r_vector(inst)
        worst_ortho = max(
            worst_ortho,
            abs(np.vdot(w, w) - 1),
            abs(np.vdot(r, r) - 1),
            abs(np.vdot(w, r)),
        )
        for _ in range(20):
            x = _random_reduced(rng)
            lifted = lift(x, inst)
            back, resid = reduce(lifted, inst)
            worst_round = max(worst_round, abs(back.a - x.a), abs(back.b - x.b), resid)
            worst_prob = max(worst_prob, abs(success_probability(lifted, inst) - abs(x.a) ** 2))
    out.append(_le("state", "norm_preservation", worst_norm, NORM_TOL))
    out.append(_le("state", "basis_orthonormality", worst_ortho, ORTHO_TOL))
    out.append(_le("state", "reduce_lift_identity", worst_round, NORM_TOL))
    out.append(_le("state", "success_probability_of_lift", worst_prob, NORM_TOL))
    return out


# --- continuous -----------------------------------------------------------


def continuous_suite(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []

    inst = SearchInstance(16, (2, 7, 11))
    spec = continuous.HamiltonianSpec(inst, 1.0)
    h = continuous.build_full_hamiltonian(spec)
    worst_hu = 0.0
    worst_fixed = 0.0
    for _ in range(5):
        u = _orth_to_plane(rng, inst)
        worst_hu = max(worst_hu, float(np.linalg.norm(h @ u)))
        moved = continuous.propagate(spec, 2.7, QuantumState(u)).amplitudes
        worst_fixed = max(worst_fixed, float(np.linalg.norm(moved - u)))
    out.append(_le("continuous", "block_invariance_Hu", worst_hu, 1e-12))
    out.append(_le("continuous", "block_invariance_evolution", worst_fixed, 1e-12))

    worst = 0.0
    for n, ell in [(4, 1), (8, 2), (16, 2), (64, 4)]:
        sp = continuous.HamiltonianSpec(SearchInstance.first(n, ell), 1.0)
        big_t = continuous.optimal_time(sp)
        for t in np.linspace(0.0, 2 * big_t, 50):
            p_full = success_probability(continuous.evolve_full(sp, float(t)), sp.instance)
            worst = max(worst, abs(p_full - continuous.closed_form_probability(sp, float(t))))
    out.append(_le("continuous", "closed_form_consistency", worst, 1e-8))

    sp = continuous.HamiltonianSpec(SearchInstance.first(64, 3), 1.0)
    big_t = continuous.optimal_time(sp)
    drift = max(
        abs(continuous.evolve_full(sp, float(t)).norm() - 1)
        for t in np.linspace(0.0, 10 * big_t, 41)
    )
    out.append(_le("continuous", "unitarity", drift, NORM_TOL))

    worst = 0.0
    for n, ell in [(4, 1), (9, 2), (50, 7)]:
        sp = continuous.HamiltonianSpec(SearchInstance.first(n, ell), 1.3)
        h2 = continuous.reduced_hamiltonian(sp)
        e, y = sp.energy, sp.y
        for t in (0.1, 1.0, 4.0):
            c, s = math.cos(e * y * t), math.sin(e * y * t)
            q = math.sqrt(1 - y * y)
            closed = np.exp(-1j * e * t) * np.array(
                [[c - 1j * y * s, -1j * q * s], [-1j * q * s, c + 1j * y * s]]
            )
            worst = max(worst, float(np.abs(unitary_propagator(h2, t) - closed).max()))
    out.append(_le("continuous", "matrix_exponential_identity", worst, 1e-12))

    sp = continuous.HamiltonianSpec(SearchInstance.first(32, 3), 1.0)
    big_t = continuous.optimal_time(sp)
    p = [continuous.closed_form_probability(sp, float(t)) for t in np.linspace(0, big_t, 200)]
    worst_drop = max(0.0, max(a - b for a, b in zip(p, p[1:])))
    out.append(_le("continuous", "monotone_on_0_T", worst_drop, 1e-15))
    return out


def lower_bound_suite(n: int = 16, ell: int = 2, energy: float = 1.0) -> list[Check]:
    res = continuous.verify_lower_bound_inequality(n, ell, energy)
    detail = f"lhs={res.lhs:.15g} middle={res.middle:.15g} rhs={res.rhs:.15g}"
    out = [
        Check("lower-bound", "left_inequality", res.lhs <= res.middle + continuous.BOUND_TOL,
              res.lhs - res.middle, continuous.BOUND_TOL, detail),
        Check("lower-bound", "right_inequality", res.middle <= res.rhs + continuous.BOUND_TOL,
              res.middle - res.rhs, continuous.BOUND_TOL, detail),
    ]
    worst = -math.inf
    for nn in (4, 16, 64, 256, 1000):
        for ll in (1, 2, 4):
            if ll < nn:
                sp = continuous.HamiltonianSpec(SearchInstance.first(nn, ll), energy)
                worst = max(worst, continuous.lower_bound(nn, ll, energy) - continuous.optimal_time(sp))
    out.append(_le("lower-bound", "optimal_time_above_lower_bound", worst, 0.0))
    return out


# --- discrete -------------------------------------------------------------


def discrete_suite(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []

    inst = SearchInstance.first(1024, 1)
    state = uniform_superposition(inst)
    for _ in range(10_000):
        state = discrete.grover_step(state, inst)
    out.append(_le("discrete", "unitarity_10k_steps", abs(state.norm() - 1), 1e-9))

    worst_resid = 0.0
    for n, ell in [(16, 3), (100, 7)]:
        ins = SearchInstance.first(n, ell)
        st = lift(_random_reduced(rng), ins)
        m_star, _ = discrete.optimal_iterations(ins)
        for _ in range(2 * m_star + 5):
            st = discrete.grover_step(st, ins)
            worst_resid = max(worst_resid, reduce(st, ins)[1])
    out.append(_le("discrete", "invariant_plane", worst_resid, 1e-12))

    worst = 0.0
    for n, ell in [(4, 1), (8, 2), (16, 5), (64, 1), (256, 3)]:
        ins = SearchInstance.first(n, ell)
        m_star, _ = discrete.optimal_iterations(ins)
        worst = max(worst, discrete.iterate(ins, 2 * m_star).max_abs_error())
    out.append(_le("discrete", "closed_form_vs_full", worst, 1e-9))

    worst = 0.0
    ins = SearchInstance(12, (3, 4, 9))
    for _ in range(10):
        st = _random_state(rng, 12)
        twice_l = discrete.apply_oracle_reflection(discrete.apply_oracle_reflection(st, ins), ins)
        twice_s = discrete.apply_diffusion(discrete.apply_diffusion(st, ins), ins)
        worst = max(
            worst,
            float(np.abs(twice_l.amplitudes - st.amplitudes).max()),
            float(np.abs(twice_s.amplitudes - st.amplitudes).max()),
        )
    out.append(_le("discrete", "involutions", worst, 1e-12))

    worst = 0.0
    for n in range(2, 9):
        for ell in range(1, n):
            ins = SearchInstance.first(n, ell)
            a_num, u_num = discrete.subspace_matrices(ins)
            a_ref, u_ref = subspace_matrix_entries(n, ell)
            worst = max(worst, float(np.abs(a_num - a_ref).max()), float(np.abs(u_num - u_ref).max()))
    out.append(_le("discrete", "subspace_matrix_entries", worst, 1e-12))
    return out


def subspace_matrix_entries(n: int, ell: int) -> tuple[np.ndarray, np.ndarray]:
    """Entry formulas for I_s and U on (|w_1>, ..., |w_ell>, |r>)."""
    off = 2 * math.sqrt(n - ell) / n
    a = np.eye(ell + 1) - 2.0 / n
    a[:ell, ell] = -off
    a[ell, :ell] = -off
    a[ell, ell] = 2 * ell / n - 1
    u = np.eye(ell + 1) - 2.0 / n
    u[:ell, ell] = off
    u[ell, :ell] = -off
    u[ell, ell] = 1 - 2 * ell / n
    return a, u


# --- stopping -------------------------------------------------------------


def stopping_suite() -> list[Check]:
    out = []
    problems = [stopping.StoppingProblem.from_search(n, 1) for n in (10**4, 10**5, 10**6)]
    problems.append(stopping.StoppingProblem(0.002, 1.5698))
    worst_cert = 0.0
    worst_gap = 0
    worst_series = 0.0
    for prob in problems:
        sol = stopping.solve_fixed_point(prob)
        worst_cert = max(worst_cert, stopping.exponential_form_residual(sol.j_real, prob))
        worst_gap = max(worst_gap, abs(round(sol.j_real) - sol.j_int))
        x = prob.theta * sol.j_real
        # one-term truncation of arctan(1/(2x)) errs by at most 1/(24 x^3)
        series_err = abs(math.atan(1 / (2 * x)) - 1 / (2 * x))
        worst_series = max(worst_series, 24 * series_err * x**3)
    out.append(_le("stopping", "exponential_form_certificate", worst_cert, 1e-9))
    out.append(_le("stopping", "oracle_agreement", worst_gap, 1))
    out.append(_le("stopping", "log_branch_truncation_x^-3", worst_series, 1.0))

    rel = []
    for theta_target in (0.02, 0.002, 0.0002):
        # n with theta ~ 2/sqrt(n) for ell = 1
        n = round((2 / theta_target) ** 2)
        prob = stopping.StoppingProblem.from_search(n, 1)
        sol = stopping.solve_fixed_point(prob)
        rel.append(abs(sol.j_first_order - sol.j_real) / sol.j_real)
    decreasing = all(b < a for a, b in zip(rel, rel[1:]))
    out.append(Check("stopping", "seed_quality_improves", decreasing, rel[-1], rel[0],
                     "relative seed errors " + ", ".join(f"{r:.6g}" for r in rel)))
    return out


# --- classical ------------------------------------------------------------


def classical_suite(seed: int = 0) -> list[Check]:
    out = []
    worst_norm = 0.0
    worst_mean = 0.0
    for n in range(1, 501, 7):
        for ell in sorted({min(k, n) for k in (1, 2, 3, n // 3 or 1, n // 2 or 1, n)}):
            urn = classical.UrnModel(n, ell)
            p = classical.pmf_vector(urn)
            worst_norm = max(worst_norm, abs(p.sum() - 1))
            worst_mean = max(worst_mean, abs(classical.expectation_from_pmf(urn) - float(classical.expectation(urn))))
    out.append(_le("classical", "pmf_normalization", worst_norm, 1e-12))
    out.append(_le("classical", "two_route_expectation", worst_mean, 1e-10))

    ok = all(
        classical.mean_proof_identities(n, ell)
        for n in range(2, 61)
        for ell in range(1, n)
    )
    out.append(Check("classical", "binomial_sum_identities", ok, float(ok), 1.0))

    worst_z = 0.0
    for n, ell in [(100, 9), (50, 1), (20, 4), (500, 50)]:
        urn = classical.UrnModel(n, ell)
        mean, se = classical.monte_carlo(urn, 200_000, seed)
        worst_z = max(worst_z, abs(mean - float(classical.expectation(urn))) / se)
    out.append(_le("classical", "monte_carlo_within_4_se", worst_z, 4.0))

    ratios = []
    for r in (4, 16, 64, 256):
        inst = SearchInstance.first(r, 1)
        m_star, _ = discrete.optimal_iterations(inst)
        ratios.append(float(classical.expectation(classical.UrnModel(r, 1))) / m_star)
    growing = all(b > a for a, b in zip(ratios, ratios[1:]))
    out.append(Check("classical", "quadratic_speedup_ratio_grows", growing, ratios[-1], ratios[0],
                     "ratios " + ", ".join(f"{x:.6g}" for x in ratios)))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "state": state_suite,
    "continuous": continuous_suite,
    "lower-bound": lower_bound_suite,
    "discrete": discrete_suite,
    "stopping": stopping_suite,
    "classical": classical_suite,
}


def run_suite(name: str, n: int | None = None, ell: int | None = None,
              energy: float | None = None, seed: int = 0) -> list[Check]:
    if name == "all":
        checks: list[Check] = []
        for key in SUITES:
            checks.extend(run_suite(key, n, ell, energy, seed))
        return checks
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    if name == "lower-bound":
        kwargs = {}
        if n is not None:
            kwargs["n"] = n
        if ell is not None:
            kwargs["ell"] = ell
        if energy is not None:
            kwargs["energy"] = energy
        return lower_bound_suite(**kwargs)
    if name == "stopping":
        return stopping_suite()
    return SUITES[name](seed=seed)
