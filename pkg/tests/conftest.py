import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from multisearch.core import SearchInstance

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def instances(draw, max_n=64):
    n = draw(st.integers(min_value=2, max_value=max_n))
    ell = draw(st.integers(min_value=1, max_value=n - 1))
    marked = draw(st.permutations(range(1, n + 1)))[:ell]
    return SearchInstance(n, tuple(marked))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_unit(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)
