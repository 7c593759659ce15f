import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsuperadd.ensembles import Ensemble, hjw_ensemble, scaled_eigenvectors
from qsuperadd.linalg import ValidationError, density_from, fourier_matrix, haar_unitary_from, projector


def test_identity_mixer_gives_eigen_decomposition():
    rho = np.diag([0.7, 0.3])
    ens = hjw_ensemble(rho, np.eye(2))
    np.testing.assert_allclose(ens.weights, [0.7, 0.3])
    np.testing.assert_allclose(ens.states[0], projector(np.array([1, 0])), atol=1e-15)


def test_fourier_mixer_on_maximally_mixed_qubit():
    ens = hjw_ensemble(np.eye(2) / 2, fourier_matrix(2))
    np.testing.assert_allclose(ens.weights, [0.5, 0.5])
    plus, minus = np.array([1, 1]) / np.sqrt(2), np.array([1, -1]) / np.sqrt(2)
    got = sorted(ens.states, key=lambda s: -s[0, 1].real)
    np.testing.assert_allclose(got[0], projector(plus), atol=1e-15)
    np.testing.assert_allclose(got[1], projector(minus), atol=1e-15)


@given(st.integers(0, 2**32), st.integers(2, 4), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_hjw_reproduces_the_state(seed, d, extra):
    rng = np.random.default_rng(seed)
    rank = int(rng.integers(1, d + 1))
    rho = density_from(rng, d, rank)
    mixer = haar_unitary_from(rng, rank + extra)[:, :rank]
    ens = hjw_ensemble(rho, mixer)
    assert np.max(np.abs(ens.average() - rho)) < 1e-12
    assert ens.weights.sum() == pytest.approx(1.0)
    assert all(np.trace(s @ s).real == pytest.approx(1.0) for s in ens.states)


def test_scaled_eigenvectors_drop_the_kernel():
    assert scaled_eigenvectors(np.diag([1.0, 0.0, 0.0])).shape == (3, 1)


def test_hjw_rejects_bad_mixers():
    rho = np.eye(2) / 2
    with pytest.raises(ValidationError):
        hjw_ensemble(rho, np.ones((2, 2)))
    with pytest.raises(ValidationError):
        hjw_ensemble(rho, np.eye(2)[:1])


def test_ensemble_drops_zero_weights_and_validates():
    ens = Ensemble([1.0, 0.0], np.stack([np.eye(2) / 2, np.eye(2) / 2]))
    assert len(ens) == 1
    with pytest.raises(ValidationError):
        Ensemble([0.5], np.stack([np.eye(2) / 2] * 2))
    with pytest.raises(ValidationError):
        Ensemble.from_vectors(np.zeros((2, 2)))
