import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from multisearch.linalg import expm_taylor, unitary_propagator


def hermitian(rng, dim, scale):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


@pytest.mark.parametrize("dim", [1, 2, 3, 6])
@pytest.mark.parametrize("scale", [1e-3, 1.0, 40.0])
def test_matches_scipy(rng, dim, scale):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    a *= scale / np.abs(a).sum(axis=0).max()
    ref = scipy.linalg.expm(a)
    assert np.allclose(expm_taylor(a), ref, rtol=1e-12, atol=1e-12 * np.abs(ref).max())


def test_zero_and_diagonal():
    assert np.array_equal(expm_taylor(np.zeros((3, 3))), np.eye(3))
    d = np.diag([0.5, -2.0, 3.0j])
    assert np.allclose(expm_taylor(d), np.diag(np.exp([0.5, -2.0, 3.0j])), atol=1e-14)


@given(st.integers(1, 5), st.floats(0.0, 500.0), st.integers(0, 2**32 - 1))
def test_propagator_unitary_and_matches_eigendecomposition(dim, t, seed):
    rng = np.random.default_rng(seed)
    h = hermitian(rng, dim, 1.0)
    u = unitary_propagator(h, t)
    assert np.abs(u.conj().T @ u - np.eye(dim)).max() < 1e-10
    w, v = np.linalg.eigh(h)
    ref = v @ np.diag(np.exp(-1j * w * t)) @ v.conj().T
    assert np.abs(u - ref).max() < 1e-9


def test_rejects_non_square():
    with pytest.raises(ValueError):
        expm_taylor(np.zeros((2, 3)))
