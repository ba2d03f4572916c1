import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multisearch.classical import (
    PMF_SUM_CAP,
    UrnModel,
    _draws_without_replacement,
    distribution,
    expectation,
    expectation_from_pmf,
    hockey_stick,
    mean_from_proof_identities,
    mean_proof_identities,
    mean_proof_sums,
    monte_carlo,
    monte_carlo_with_replacement,
    pmf,
    pmf_vector,
    printed_identities,
    with_replacement_expectation,
)

urns = st.integers(1, 40).flatmap(lambda n: st.builds(UrnModel, st.just(n), st.integers(1, n)))


def enumerate_first_black(n, ell):
    """Exact law of T_b by listing every arrangement of the colours."""
    counts = Counter()
    for blacks in itertools.combinations(range(n), ell):
        counts[min(blacks) + 1] += 1
    total = math.comb(n, ell)
    return {j: Fraction(c, total) for j, c in counts.items()}


def fraction_pmf(n, ell, j):
    p = Fraction(1)
    for i in range(j - 1):
        p *= Fraction(n - ell - i, n - i)
    return p * Fraction(ell, n - j + 1)


class TestPmf:
    def test_six_two(self):
        assert enumerate_first_black(6, 2) == {
            1: Fraction(1, 3), 2: Fraction(4, 15), 3: Fraction(1, 5), 4: Fraction(2, 15), 5: Fraction(1, 15)
        }
        for j, p in enumerate_first_black(6, 2).items():
            assert pmf(UrnModel(6, 2), j) == pytest.approx(float(p), rel=1e-15)

    @pytest.mark.parametrize("n, ell", [(1, 1), (5, 1), (7, 3), (9, 9), (10, 4)])
    def test_against_enumeration(self, n, ell):
        ref = enumerate_first_black(n, ell)
        vec = pmf_vector(UrnModel(n, ell))
        assert vec.size == len(ref)
        for j, p in ref.items():
            assert vec[j - 1] == pytest.approx(float(p), rel=1e-13)

    @given(urns)
    def test_vector_matches_scalar_and_rational(self, urn):
        vec = pmf_vector(urn)
        for j in urn.support:
            assert vec[j - 1] == pytest.approx(pmf(urn, j), rel=1e-12)
            assert vec[j - 1] == pytest.approx(float(fraction_pmf(urn.n, urn.ell, j)), rel=1e-12)
        assert vec.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(vec >= 0)

    def test_support(self):
        urn = UrnModel(10, 3)
        with pytest.raises(ValueError):
            pmf(urn, 0)
        with pytest.raises(ValueError):
            pmf(urn, 9)
        assert pmf(UrnModel(10, 10), 1) == 1.0

    def test_invalid_urn(self):
        for n, ell in [(5, 0), (3, 4)]:
            with pytest.raises(ValueError):
                UrnModel(n, ell)


class TestExpectation:
    @given(urns)
    def test_fraction_matches_rational_sum(self, urn):
        exact = sum(j * fraction_pmf(urn.n, urn.ell, j) for j in urn.support)
        assert expectation(urn) == exact
        assert expectation_from_pmf(urn) == pytest.approx(float(exact), rel=1e-12)

    def test_known_values(self):
        assert expectation(UrnModel(200, 7)) == Fraction(201, 8)
        assert float(expectation(UrnModel(200, 7))) == 25.125
        assert distribution(UrnModel(6, 2)).mean == Fraction(7, 3)

    def test_pmf_sum_cap(self):
        with pytest.raises(ValueError):
            expectation_from_pmf(UrnModel(PMF_SUM_CAP + 1, 1))

    def test_without_beats_with_replacement(self):
        for n, ell in [(10, 1), (100, 5), (1000, 999)]:
            urn = UrnModel(n, ell)
            assert expectation(urn) <= with_replacement_expectation(urn)


class TestMonteCarlo:
    def test_deterministic(self):
        urn = UrnModel(50, 3)
        assert monte_carlo(urn, 5000, seed=7) == monte_carlo(urn, 5000, seed=7)
        assert monte_carlo(urn, 5000, seed=7, shards=4) == monte_carlo(urn, 5000, seed=7, shards=4)
        assert monte_carlo(urn, 5000, seed=7) != monte_carlo(urn, 5000, seed=8)

    def test_sharding_pools_samples(self):
        urn = UrnModel(30, 2)
        parts = [monte_carlo(urn, 1000, seed=11 + s)[0] for s in range(3)]
        m3, _ = monte_carlo(urn, 3000, seed=11, shards=3)
        assert m3 == pytest.approx(sum(parts) / 3, rel=1e-12)

    @pytest.mark.parametrize("n, ell", [(100, 9), (20, 4), (7, 7)])
    def test_mean_within_error(self, n, ell):
        urn = UrnModel(n, ell)
        mean, se = monte_carlo(urn, 200_000, seed=3)
        assert abs(mean - float(expectation(urn))) < 5 * max(se, 1e-12)

    def test_sample_law_matches_pmf(self):
        urn = UrnModel(12, 3)
        rng = np.random.default_rng(0)
        draws = _draws_without_replacement(12, 3, 200_000, rng)
        freq = np.bincount(draws, minlength=urn.n - urn.ell + 2)[1:] / draws.size
        assert np.abs(freq - pmf_vector(urn)).max() < 0.005

    def test_with_replacement(self):
        urn = UrnModel(20, 4)
        mean, se = monte_carlo_with_replacement(urn, 200_000, seed=5)
        assert abs(mean - 5.0) < 5 * se
        assert abs(mean - float(expectation(urn))) > 10 * se

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            monte_carlo(UrnModel(5, 1), 0, seed=0)
        with pytest.raises(ValueError):
            monte_carlo(UrnModel(5, 1), 10, seed=0, shards=0)


class TestIdentities:
    @given(st.integers(0, 60).flatmap(lambda t: st.tuples(st.integers(0, t), st.just(t))))
    def test_hockey_stick(self, m_top):
        m, top = m_top
        assert hockey_stick(m, top) == math.comb(top + 1, m + 1)

    def test_hockey_stick_domain(self):
        with pytest.raises(ValueError):
            hockey_stick(5, 3)

    @pytest.mark.parametrize("n", range(2, 40))
    def test_sum_identities(self, n):
        for ell in range(1, n):
            assert mean_proof_identities(n, ell)
            assert mean_from_proof_identities(n, ell) == Fraction(n + 1, ell + 1)

    def test_sums_small_case(self):
        assert mean_proof_sums(3, 1) == (3, 3)

    def test_leading_term_variant_is_false(self):
        # n = 3, ell = 1: C(3,0) + 3 = 4 != C(3,1) = 3 and C(3,1) + 3 = 6 != C(3,2) = 3
        assert printed_identities(3, 1) == (False, False)
        assert not any(any(printed_identities(n, ell)) for n in range(2, 61) for ell in range(1, n))
