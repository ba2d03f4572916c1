"""Acceptance criteria, one test each, at the stated tolerances and time budgets.

Each test prints a single PASS/FAIL line with the measured quantity and the
wall-clock time before asserting.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from multisearch import classical, continuous, discrete, stopping
from multisearch.core import SearchInstance, success_probability, uniform_superposition


def report(capsys, number, title, passed, detail, elapsed, budget):
    in_time = elapsed < budget
    verdict = "PASS" if passed and in_time else "FAIL"
    line = (f"[acceptance {number}] {verdict}  {title}: {detail}  "
            f"(time {elapsed:.4g}s, budget {budget:g}s)")
    with capsys.disabled():
        print("\n" + line)
    assert passed, line
    assert in_time, line


def test_01_single_step_success(capsys):
    cases = [(4, 1), (8, 2)]
    insts = [SearchInstance.first(n, ell) for n, ell in cases]
    for inst in insts:  # warm the oracle cache outside the timed region
        discrete.oracle_phases(inst)
    t0 = time.perf_counter()
    probs = [success_probability(discrete.grover_step(uniform_superposition(i), i), i) for i in insts]
    elapsed = time.perf_counter() - t0
    ang = discrete.grover_angles(4, 1)
    ok = all(abs(p - 1) < 1e-10 for p in probs)
    ok &= abs(ang.theta - math.pi / 3) < 1e-15 and abs(ang.alpha - math.pi / 3) < 1e-15
    detail = ", ".join(f"N={n},l={l}: 1-p={1 - p:.3g}" for (n, l), p in zip(cases, probs))
    report(capsys, 1, "exact single-step success", ok, detail, elapsed, 1e-3)


def test_02_discrete_closed_form_vs_brute_force(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    for n, ell in [(4, 1), (8, 2), (16, 5), (64, 1), (256, 3)]:
        inst = SearchInstance.first(n, ell)
        m_star, _ = discrete.optimal_iterations(inst)
        worst = max(worst, discrete.iterate(inst, 2 * m_star).max_abs_error())
    elapsed = time.perf_counter() - t0
    report(capsys, 2, "discrete closed form vs full space", worst < 1e-9,
           f"max |p_full - cos^2(m theta - alpha)| = {worst:.3g} (tol 1e-9)", elapsed, 1.0)


def test_03_optimal_count_asymptotic(capsys):
    t0 = time.perf_counter()
    ratios = {}
    for r in (100, 400, 10**4):
        m_star, _ = discrete.optimal_iterations(SearchInstance.first(r, 1))
        ratios[r] = m_star / (math.pi / 4 * math.sqrt(r))
    elapsed = time.perf_counter() - t0
    ok = all(0.9 <= q <= 1.1 for q in ratios.values())
    detail = ", ".join(f"N/l={r}: {q:.4f}" for r, q in ratios.items()) + " (band [0.9, 1.1])"
    report(capsys, 3, "m_star / ((pi/4) sqrt(N/l))", ok, detail, elapsed, 1.0)


def test_04_continuous_closed_form_vs_full(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    worst_peak = 0.0
    for n, ell in [(4, 1), (16, 2), (64, 4)]:
        spec = continuous.HamiltonianSpec(SearchInstance.first(n, ell), 1.0)
        big_t = continuous.optimal_time(spec)
        y = spec.y
        for t in np.linspace(0.0, 2 * big_t, 50):
            p = success_probability(continuous.evolve_full(spec, float(t)), spec.instance)
            closed = math.sin(y * t) ** 2 + y * y * math.cos(y * t) ** 2
            worst = max(worst, abs(p - closed))
        peak = success_probability(continuous.evolve_full(spec, big_t), spec.instance)
        worst_peak = max(worst_peak, abs(peak - 1))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-8 and worst_peak < 1e-9
    report(capsys, 4, "continuous closed form vs full evolution", ok,
           f"max curve error {worst:.3g} (tol 1e-8), max |P(T)-1| {worst_peak:.3g} (tol 1e-9)",
           elapsed, 5.0)


def test_05_lower_bound_sandwich(capsys):
    t0 = time.perf_counter()
    res = continuous.verify_lower_bound_inequality(16, 2, 1.0)
    tol = 1e-8
    sandwich = res.lhs <= res.middle + tol and res.middle <= res.rhs + tol
    grid = [(2**k, ell) for k in range(3, 13) for ell in (1, 3)]
    worst = max(
        continuous.lower_bound(n, ell, 1.0)
        - continuous.optimal_time(continuous.HamiltonianSpec(SearchInstance.first(n, ell), 1.0))
        for n, ell in grid
    )
    elapsed = time.perf_counter() - t0
    ok = sandwich and worst <= 0 and len(grid) == 20
    report(capsys, 5, "lower-bound sandwich at N=16, l=2", ok,
           f"{res.lhs:.12g} <= {res.middle:.12g} <= {res.rhs:.12g}; "
           f"max(lower_bound - T) over {len(grid)} points = {worst:.4g}", elapsed, 5.0)


def test_06_stopping_solver(capsys):
    t0 = time.perf_counter()
    rows = []
    ok = True
    for ratio in (1e-4, 1e-5, 1e-6):
        n = round(1 / ratio)
        prob = stopping.StoppingProblem.from_search(n, 1)
        sol = stopping.solve_fixed_point(prob)
        resid = stopping.stationarity_residual(sol.j_real, prob)
        seed_err = abs(sol.j_first_order - sol.j_real) / sol.j_real
        gap = abs(round(sol.j_real) - sol.j_int)
        ok &= resid < 1e-10 and seed_err <= 0.05 and gap <= 1
        rows.append(f"l/N={ratio:g}: j={sol.j_real:.10g} resid={resid:.2g} seed_err={seed_err:.2%} "
                    f"j_int={sol.j_int}")
    elapsed = time.perf_counter() - t0
    report(capsys, 6, "stopping fixed point", ok, "; ".join(rows), elapsed, 1.0)


def test_07_classical_baseline(capsys):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 201):
        for ell in range(1, n + 1):
            urn = classical.UrnModel(n, ell)
            worst = max(worst, abs(classical.expectation_from_pmf(urn) - (n + 1) / (ell + 1)))
    small = classical.expectation(classical.UrnModel(4, 1))
    mc, se = classical.monte_carlo(classical.UrnModel(100, 9), 10**6, seed=2024)
    elapsed = time.perf_counter() - t0
    rel = abs(mc - 10.1) / 10.1
    ok = worst < 1e-10 and small == Fraction(5, 2) and rel < 0.01
    report(capsys, 7, "classical urn baseline", ok,
           f"max |pmf mean - (N+1)/(l+1)| = {worst:.3g}; N=4,l=1 -> {small}; "
           f"MC mean {mc:.6f} +/- {se:.2g} ({rel:.3%} from 10.1)", elapsed, 10.0)


def test_08_combinatorial_identities(capsys):
    t0 = time.perf_counter()
    hockey_ok = True
    for top in range(0, 61):
        for m in range(0, top + 1):
            try:
                classical.hockey_stick(m, top)
            except ArithmeticError:
                hockey_ok = False
    pairs = [(n, ell) for n in range(2, 61) for ell in range(1, n)]
    printed = [classical.printed_identities(n, ell) for n, ell in pairs]
    first_ok = sum(a for a, _ in printed)
    second_ok = sum(b for _, b in printed)
    elapsed = time.perf_counter() - t0
    ok = hockey_ok and first_ok == len(pairs) and second_ok == len(pairs)
    report(capsys, 8, "hockey stick and the leading-term sum identities", ok,
           f"hockey stick {'holds' if hockey_ok else 'fails'}; "
           f"C(N,l-1)+sum=C(N,l) holds for {first_ok}/{len(pairs)}, "
           f"C(N,l)+sum=C(N,l+1) holds for {second_ok}/{len(pairs)}", elapsed, 1.0)


def test_09_unitarity_endurance(capsys):
    t0 = time.perf_counter()
    inst = SearchInstance.first(1024, 1)
    state = uniform_superposition(inst)
    for _ in range(10**4):
        state = discrete.grover_step(state, inst)
    discrete_drift = abs(state.norm() - 1)
    cont_drift = 0.0
    for n, ell in [(1024, 1), (64, 4)]:
        spec = continuous.HamiltonianSpec(SearchInstance.first(n, ell), 1.0)
        big_t = continuous.optimal_time(spec)
        for t in np.linspace(0.0, 10 * big_t, 101):
            cont_drift = max(cont_drift, abs(continuous.evolve_full(spec, float(t)).norm() - 1))
    elapsed = time.perf_counter() - t0
    ok = discrete_drift < 1e-9 and cont_drift < 1e-10
    report(capsys, 9, "unitarity endurance", ok,
           f"10^4 Grover steps drift {discrete_drift:.3g} (tol 1e-9); "
           f"continuous to 10T drift {cont_drift:.3g} (tol 1e-10)", elapsed, 30.0)
