"""Classical random search as an urn problem.

An urn holds n balls, ell of them black.  T_b is the number of draws without
replacement until the first black ball.  E[T_b] = (n + 1) / (ell + 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

PMF_SUM_CAP = 10**4


@dataclass(frozen=True)
class UrnModel:
    n: int
    ell: int

    def __post_init__(self) -> None:
        if not 1 <= self.ell <= self.n:
            raise ValueError(f"urn needs 1 <= ell <= n, got n={self.n}, ell={self.ell}")

    @property
    def support(self) -> range:
        return range(1, self.n - self.ell + 2)


@dataclass(frozen=True, eq=False)
class UrnDistribution:
    urn: UrnModel
    pmf: np.ndarray  # pmf[j - 1] = P(T_b = j)
    mean: Fraction


def pmf(urn: UrnModel, j: int) -> float:
    """P(T_b = j): j - 1 white draws followed by a black one."""
    n, ell = urn.n, urn.ell
    if j not in urn.support:
        raise ValueError(f"j={j} outside support 1..{n - ell + 1}")
    p = 1.0
    for i in range(j - 1):
        p *= (n - ell - i) / (n - i)
    return p * ell / (n - j + 1)


def pmf_vector(urn: UrnModel) -> np.ndarray:
    n, ell = urn.n, urn.ell
    i = np.arange(n - ell + 1, dtype=np.float64)
    # probability that the first i draws are all white, i = 0..n-ell
    white = np.concatenate(([1.0], np.cumprod((n - ell - i[:-1]) / (n - i[:-1]))))
    return white * ell / (n - i)


def distribution(urn: UrnModel) -> UrnDistribution:
    return UrnDistribution(urn, pmf_vector(urn), expectation(urn))


def expectation(urn: UrnModel) -> Fraction:
    return Fraction(urn.n + 1, urn.ell + 1)


def expectation_from_pmf(urn: UrnModel) -> float:
    if urn.n > PMF_SUM_CAP:
        raise ValueError(f"n={urn.n} exceeds the summation cap {PMF_SUM_CAP}")
    p = pmf_vector(urn)
    return float(np.dot(np.arange(1, p.size + 1), p))


def with_replacement_expectation(urn: UrnModel) -> Fraction:
    """Mean of the geometric distribution with p = ell / n."""
    return Fraction(urn.n, urn.ell)


def _draws_without_replacement(n: int, ell: int, trials: int, rng: np.random.Generator) -> np.ndarray:
    # Partial Fisher-Yates, vectorized over trials.  Until the first black
    # ball appears all ell black balls are still in the pool, and the pool can
    # be kept with the black balls in its first ell slots, so step i picks a
    # uniform slot among the n - i remaining and hits iff the slot is < ell.
    draws = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    for i in range(n - ell + 1):
        slot = rng.integers(0, n - i, size=active.size)
        hit = slot < ell
        draws[active[hit]] = i + 1
        active = active[~hit]
        if active.size == 0:
            break
    return draws


def _mean_and_stderr(samples: np.ndarray) -> tuple[float, float]:
    mean = float(samples.mean())
    if samples.size < 2:
        return mean, 0.0
    return mean, float(samples.std(ddof=1) / math.sqrt(samples.size))


def monte_carlo(urn: UrnModel, trials: int, seed: int, shards: int = 1) -> tuple[float, float]:
    """Sample mean of T_b and its standard error.

    Shard s draws with seed + s; shards are merged by pooling the samples, so
    the result depends only on (seed, shards, trials).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    sizes = [trials // shards + (1 if s < trials % shards else 0) for s in range(shards)]
    samples = np.concatenate(
        [
            _draws_without_replacement(urn.n, urn.ell, size, np.random.default_rng(seed + s))
            for s, size in enumerate(sizes)
            if size
        ]
    )
    return _mean_and_stderr(samples)


def monte_carlo_with_replacement(urn: UrnModel, trials: int, seed: int) -> tuple[float, float]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    samples = rng.geometric(urn.ell / urn.n, size=trials)
    return _mean_and_stderr(samples.astype(np.float64))


def hockey_stick(m: int, n_top: int) -> int:
    """sum_{j=m}^{n_top} C(j, m), checked against C(n_top + 1, m + 1)."""
    if not 0 <= m <= n_top:
        raise ValueError(f"need 0 <= m <= n_top, got m={m}, n_top={n_top}")
    total = sum(math.comb(j, m) for j in range(m, n_top + 1))
    closed = math.comb(n_top + 1, m + 1)
    if total != closed:
        raise ArithmeticError(f"hockey-stick sum {total} != C({n_top + 1}, {m + 1}) = {closed}")
    return total


def mean_proof_sums(n: int, ell: int) -> tuple[int, int]:
    """The two binomial sums in the summation route to E[T_b].

    Returns (sum_{k=0}^{n-ell} C(k+ell-1, ell-1), sum_{k=0}^{n-ell-1} C(k+ell, ell)).
    """
    first = sum(math.comb(k + ell - 1, ell - 1) for k in range(n - ell + 1))
    second = sum(math.comb(k + ell, ell) for k in range(n - ell))
    return first, second


def mean_proof_identities(n: int, ell: int) -> bool:
    """The sums close to C(n, ell) and C(n, ell + 1) = (n - ell)/(ell + 1) C(n, ell)."""
    first, second = mean_proof_sums(n, ell)
    return (
        first == math.comb(n, ell)
        and second == math.comb(n, ell + 1)
        and (ell + 1) * second == (n - ell) * math.comb(n, ell)
    )


def printed_identities(n: int, ell: int) -> tuple[bool, bool]:
    """Variant of the sum identities with an extra leading binomial term.

    C(n, ell-1) + sum_k C(k+ell-1, ell-1) = C(n, ell) and
    C(n, ell) + sum_k C(k+ell, ell) = C(n, ell+1).  By the hockey-stick
    identity the sums alone already equal the right-hand sides, so these
    hold only when the leading binomial vanishes.
    """
    first, second = mean_proof_sums(n, ell)
    return (
        math.comb(n, ell - 1) + first == math.comb(n, ell),
        math.comb(n, ell) + second == math.comb(n, ell + 1),
    )


def mean_from_proof_identities(n: int, ell: int) -> Fraction:
    """E[T_b] assembled from the two binomial sums (exact rational arithmetic)."""
    first, second = mean_proof_sums(n, ell)
    c = math.comb(n, ell)
    return Fraction((n - ell + 1) * first, c) - Fraction(ell * second, c)
