import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsuperadd.channels import channel_compose, choi_distance, identity_channel, is_cptp, is_unital
from qsuperadd.entropy import von_neumann_entropy
from qsuperadd.linalg import (
    ValidationError,
    density_from,
    fourier_matrix,
    haar_unitary_from,
    projector,
    random_povm_from,
    sample_unbiased_pure,
)
from qsuperadd.zoo import (
    DepolarizingSpec,
    ErasureSpec,
    PhaseDampingSpec,
    QcSpec,
    RestrictedWeylSpec,
    WeylSpec,
    build_depolarizing,
    build_erasure,
    build_phase_damping,
    build_qc,
    build_restricted_weyl,
    build_weyl,
    conditional_expectation,
    is_unbiased,
    weyl_operator,
)

H_03 = 0.8812908992306927  # h(0.3)


def pinch(rho, basis):
    return sum(projector(basis[:, s]) @ rho @ projector(basis[:, s]) for s in range(basis.shape[0]))


# -- phase damping ----------------------------------------------------------------

def test_degenerate_spectrum_is_noiseless(rng):
    phi = build_phase_damping(PhaseDampingSpec(haar_unitary_from(rng, 3), [1, 0, 0]))
    assert choi_distance(phi, identity_channel(3)) < 1e-12


def test_uniform_spectrum_is_pinching(rng):
    basis = haar_unitary_from(rng, 3)
    phi = build_phase_damping(PhaseDampingSpec(basis, np.full(3, 1 / 3)))
    rho = density_from(rng, 3)
    assert np.max(np.abs(phi(rho) - pinch(rho, basis))) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4])
def test_unbiased_input_outputs_the_spectrum(d, rng):
    basis = haar_unitary_from(rng, d)
    lam = rng.dirichlet(np.ones(d))
    phi = build_phase_damping(PhaseDampingSpec(basis, lam))
    out = phi(sample_unbiased_pure(basis, 3))
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(out)), np.sort(lam), atol=1e-10)


def test_phase_damping_fixes_diagonal_states(rng):
    basis = haar_unitary_from(rng, 3)
    phi = build_phase_damping(PhaseDampingSpec(basis, [0.2, 0.5, 0.3]))
    diag = basis @ np.diag([0.1, 0.6, 0.3]) @ basis.conj().T
    assert np.max(np.abs(phi(diag) - diag)) < 1e-12
    assert is_unital(phi)


def test_half_half_qubit_on_plus():
    phi = build_phase_damping(PhaseDampingSpec(np.eye(2), [0.5, 0.5]))
    out = phi(projector(np.array([1, 1]) / np.sqrt(2)))
    np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-15)
    assert von_neumann_entropy(out) == pytest.approx(1.0)


def test_phase_damping_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        PhaseDampingSpec(np.ones((2, 2)), [0.5, 0.5])
    with pytest.raises(ValidationError):
        PhaseDampingSpec(np.eye(2), [0.7, 0.7])


# -- conditional expectation ---------------------------------------------------------

def test_conditional_expectation_idempotent_and_diagonal(rng):
    basis = haar_unitary_from(rng, 4)
    e = conditional_expectation(basis)
    assert choi_distance(channel_compose(e, e), e) < 1e-10
    out = basis.conj().T @ e(density_from(rng, 4)) @ basis
    assert np.max(np.abs(out - np.diag(np.diag(out)))) < 1e-12


def test_conditional_expectation_plus_state():
    e = conditional_expectation(np.eye(2))
    np.testing.assert_allclose(e(np.full((2, 2), 0.5)), np.eye(2) / 2, atol=1e-15)


def test_conditional_expectation_absorbs_phase_damping(rng):
    basis = haar_unitary_from(rng, 3)
    e = conditional_expectation(basis)
    phi = build_phase_damping(PhaseDampingSpec(basis, [0.6, 0.3, 0.1]))
    assert choi_distance(channel_compose(e, phi), e) < 1e-12


# -- Weyl ------------------------------------------------------------------------------

def test_weyl_identity_and_qubit_paulis():
    np.testing.assert_array_equal(weyl_operator(3, 0, 0), np.eye(3))
    x = np.array([[0, 1], [1, 0]])
    z = np.diag([1, -1])
    np.testing.assert_allclose(weyl_operator(2, 1, 0), x, atol=1e-15)
    np.testing.assert_allclose(weyl_operator(2, 0, 1), z, atol=1e-15)
    np.testing.assert_allclose(weyl_operator(2, 1, 1), x @ z, atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_weyl_commutation_exhaustive(d):
    worst = 0.0
    for m, n, m2, n2 in itertools.product(range(d), repeat=4):
        a, b = weyl_operator(d, m, n), weyl_operator(d, m2, n2)
        phase = np.exp(2j * np.pi * (m2 * n - m * n2) / d)
        worst = max(worst, np.max(np.abs(a @ b - phase * b @ a)))
    assert worst < 1e-12


def test_weyl_shift_and_clock_actions():
    d = 5
    for k in range(d):
        e_k = np.eye(d)[k]
        np.testing.assert_allclose(weyl_operator(d, 2, 0) @ e_k, np.eye(d)[(k + 2) % d])
        np.testing.assert_allclose(weyl_operator(d, 0, 3) @ e_k, np.exp(2j * np.pi * 3 * k / d) * e_k)


def test_weyl_index_out_of_range():
    with pytest.raises(ValidationError):
        weyl_operator(3, 3, 0)


def test_weyl_channel_cases(rng):
    w = np.zeros((3, 3))
    w[0, 0] = 1
    assert choi_distance(build_weyl(WeylSpec(3, w)), identity_channel(3)) < 1e-14
    twirl = build_weyl(WeylSpec(2, np.full((2, 2), 0.25)))
    np.testing.assert_allclose(twirl(density_from(rng, 2)), np.eye(2) / 2, atol=1e-14)
    row = np.zeros((3, 3))
    row[0] = [0.5, 0.3, 0.2]
    phase = build_phase_damping(PhaseDampingSpec(np.eye(3), [0.5, 0.3, 0.2]))
    assert choi_distance(build_weyl(WeylSpec(3, row)), phase) < 1e-14


@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
@settings(max_examples=20, deadline=None)
def test_weyl_channels_are_unital(seed, d):
    rng = np.random.default_rng(seed)
    ch = build_weyl(WeylSpec(d, rng.dirichlet(np.ones(d * d)).reshape(d, d)))
    assert is_cptp(ch)
    assert np.max(np.abs(ch(np.eye(d) / d) - np.eye(d) / d)) < 1e-12


def test_restricted_weyl_examples(rng):
    assert choi_distance(build_restricted_weyl(RestrictedWeylSpec(3, [1, 0, 0], [0, 0])), identity_channel(3)) < 1e-14
    ch = build_restricted_weyl(RestrictedWeylSpec(2, [0.4, 0.2], [0.2]))
    assert is_cptp(ch) and is_unital(ch)
    shifts = build_restricted_weyl(RestrictedWeylSpec(3, [1 / 3] * 3, [0, 0]))
    rho = density_from(rng, 3)
    expected = sum(weyl_operator(3, m, 0) @ rho @ weyl_operator(3, m, 0).conj().T for m in range(3)) / 3
    assert np.max(np.abs(shifts(rho) - expected)) < 1e-14


def test_restricted_weyl_constraint():
    with pytest.raises(ValidationError):
        RestrictedWeylSpec(2, [0.5, 0.5], [0.1])


# -- q-c ----------------------------------------------------------------------------------

def test_projective_qc_is_classical():
    povm = [projector(np.eye(3)[j]) for j in range(3)]
    ch = build_qc(QcSpec(povm))
    np.testing.assert_allclose(ch(projector(np.eye(3)[1])), projector(np.eye(3)[1]), atol=1e-15)


def test_qc_outputs_match_born_rule(rng):
    povm = random_povm_from(rng, 3, 4)
    out_basis = haar_unitary_from(rng, 4)
    ch = build_qc(QcSpec(povm, out_basis))
    rho = density_from(rng, 3)
    out = out_basis.conj().T @ ch(rho) @ out_basis
    assert np.max(np.abs(out - np.diag(np.diag(out)))) < 1e-12
    np.testing.assert_allclose(np.diag(out).real, [np.trace(m @ rho).real for m in povm], atol=1e-10)
    assert is_cptp(ch)


def test_qc_rejects_incomplete_povm():
    with pytest.raises(ValidationError):
        QcSpec([np.diag([1.0, 0.0])])


# -- erasure ---------------------------------------------------------------------------------

def test_erasure_extremes(rng):
    rho = density_from(rng, 3)
    kept = build_erasure(ErasureSpec(3, 0.0))(rho)
    assert von_neumann_entropy(kept) == pytest.approx(von_neumann_entropy(rho), abs=1e-12)
    gone = build_erasure(ErasureSpec(3, 1.0))(rho)
    assert von_neumann_entropy(gone) < 1e-12
    assert gone[3, 3] == pytest.approx(1.0)


def test_erasure_pure_qubit():
    out = build_erasure(ErasureSpec(2, 0.3))(projector(np.array([1, 0])))
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(out))[::-1], [0.7, 0.3, 0], atol=1e-15)
    assert von_neumann_entropy(out) == pytest.approx(H_03, abs=1e-12)
    assert round(von_neumann_entropy(out), 7) == 0.8812909


@pytest.mark.parametrize("eps", [0.0, 0.3, 1.0])
def test_erasure_flag_weight(eps, rng):
    ch = build_erasure(ErasureSpec(2, eps))
    assert ch.dout == 3 and is_cptp(ch)
    assert abs(ch(density_from(rng, 2))[2, 2] - eps) < 1e-12


def test_erasure_range():
    with pytest.raises(ValidationError):
        ErasureSpec(2, 1.5)


# -- depolarizing ----------------------------------------------------------------------------

def test_depolarizing_zero_is_identity():
    assert choi_distance(build_depolarizing(DepolarizingSpec(3, 0.0)), identity_channel(3)) < 1e-14


def test_depolarizing_one_is_full_mixing(rng):
    out = build_depolarizing(DepolarizingSpec(2, 1.0))(density_from(rng, 2))
    np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-14)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("frac", [0.0, 0.3, 0.9, 1.0])
def test_depolarizing_affine_form(d, frac, rng):
    p = frac * d * d / (d * d - 1)
    ch = build_depolarizing(DepolarizingSpec(d, p))
    rho = density_from(rng, d)
    assert np.max(np.abs(ch(rho) - ((1 - p) * rho + p * np.eye(d) / d))) < 1e-10
    assert is_cptp(ch) and is_unital(ch)


def test_depolarizing_cp_boundary_weight():
    d = 3
    p_max = d * d / (d * d - 1)
    assert 1 - p_max + p_max / d**2 == pytest.approx(0.0, abs=1e-15)


def test_depolarizing_pure_qubit():
    out = build_depolarizing(DepolarizingSpec(2, 0.5))(projector(np.array([1, 0])))
    np.testing.assert_allclose(np.linalg.eigvalsh(out), [0.25, 0.75], atol=1e-15)


def test_depolarizing_range():
    with pytest.raises(ValidationError):
        DepolarizingSpec(2, 1.5)


def test_depolarizing_covariance(rng):
    ch = build_depolarizing(DepolarizingSpec(3, 0.6))
    for _ in range(10):
        t = haar_unitary_from(rng, 3)
        sigma = density_from(rng, 3)
        assert np.max(np.abs(ch(sigma) - t.conj().T @ ch(t @ sigma @ t.conj().T) @ t)) < 1e-10


# -- unbiasedness -----------------------------------------------------------------------------

def test_is_unbiased_cases():
    d = 4
    ok, dev = is_unbiased(fourier_matrix(d)[:, 1], np.eye(d))
    assert ok and dev < 1e-12
    ok, dev = is_unbiased(np.eye(d)[0], np.eye(d))
    assert not ok and dev == pytest.approx(1 - 1 / d)
    basis = haar_unitary_from(np.random.default_rng(0), 3)
    assert is_unbiased(sample_unbiased_pure(basis, 1), basis)[0]


def test_is_unbiased_rejects_mixed():
    with pytest.raises(ValidationError):
        is_unbiased(np.eye(2) / 2, np.eye(2))


def test_every_constructor_is_cptp(rng):
    channels = [
        build_phase_damping(PhaseDampingSpec(haar_unitary_from(rng, 3), [0.2, 0.3, 0.5])),
        conditional_expectation(haar_unitary_from(rng, 3)),
        build_weyl(WeylSpec(3, rng.dirichlet(np.ones(9)).reshape(3, 3))),
        build_restricted_weyl(RestrictedWeylSpec(3, [0.2, 0.1, 0.1], [0.1, 0.1])),
        build_qc(QcSpec(random_povm_from(rng, 3, 3))),
        build_erasure(ErasureSpec(3, 0.4)),
        build_depolarizing(DepolarizingSpec(3, 9 / 8)),
        identity_channel(3),
    ]
    for ch in channels:
        report = is_cptp(ch)
        assert report.completeness_residual <= 1e-10 and report.choi_min_eigenvalue >= -1e-9, ch.kind
    assert math.isclose(sum(RestrictedWeylSpec(3, [0.2, 0.1, 0.1], [0.1, 0.1]).lambdas), 1.0)
