import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsuperadd.channels import identity_channel
from qsuperadd.ensembles import Ensemble
from qsuperadd.entropy import (
    binary_entropy,
    holevo_chi,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from qsuperadd.linalg import ValidationError, density_from, haar_unitary_from, kron, projector, ptrace_k
from qsuperadd.zoo import DepolarizingSpec, build_depolarizing

H_QUARTER = 0.8112781244591328  # h(0.25) = -0.75 log2 0.75 - 0.25 log2 0.25


@pytest.mark.parametrize(
    "p, expected",
    [([1, 0, 0], 0.0), ([0.25] * 4, 2.0), ([0.75, 0.25], H_QUARTER), ([0.5, 0.5], 1.0)],
)
def test_shannon(p, expected):
    assert shannon_entropy(p) == pytest.approx(expected, abs=1e-12)


def test_shannon_oracle_digits():
    assert round(shannon_entropy([0.75, 0.25]), 7) == 0.8112781


def test_shannon_rejects_negative():
    with pytest.raises(ValidationError):
        shannon_entropy([1.2, -0.2])


def test_binary_entropy_symmetric():
    assert binary_entropy(0.3) == pytest.approx(binary_entropy(0.7))
    assert round(binary_entropy(0.3), 7) == 0.8812909


def test_pure_state_entropy_zero(rng):
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert von_neumann_entropy(projector(v / np.linalg.norm(v))) < 1e-10


@pytest.mark.parametrize("d", [2, 3, 4, 7])
def test_maximally_mixed(d):
    assert von_neumann_entropy(np.eye(d) / d) == pytest.approx(math.log2(d), abs=1e-12)


def test_depolarized_pure_qubit():
    out = build_depolarizing(DepolarizingSpec(2, 0.5))(projector(np.array([1, 0])))
    assert von_neumann_entropy(out) == pytest.approx(H_QUARTER, abs=1e-12)


@given(st.integers(0, 2**32), st.integers(2, 6))
@settings(max_examples=40, deadline=None)
def test_entropy_range_and_unitary_invariance(seed, d):
    rng = np.random.default_rng(seed)
    rho = density_from(rng, d, int(rng.integers(1, d + 1)))
    u = haar_unitary_from(rng, d)
    s = von_neumann_entropy(rho)
    assert -1e-10 <= s <= math.log2(d) + 1e-10
    assert abs(von_neumann_entropy(u @ rho @ u.conj().T) - s) < 1e-10


def test_relative_entropy_self_is_zero(rng):
    rho = density_from(rng, 3)
    assert abs(relative_entropy(rho, rho)) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 5])
def test_relative_entropy_pure_vs_mixed(d, rng):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    sigma = projector(v / np.linalg.norm(v))
    assert relative_entropy(sigma, np.eye(d) / d) == pytest.approx(math.log2(d), abs=1e-10)


def test_relative_entropy_disjoint_support_is_infinite():
    assert relative_entropy(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == math.inf


def test_relative_entropy_reverse_support_is_finite():
    # supp(sigma) inside supp(rho): finite even though rho is singular elsewhere
    sigma = np.diag([1.0, 0.0, 0.0])
    rho = np.diag([0.5, 0.5, 0.0])
    assert relative_entropy(sigma, rho) == pytest.approx(1.0)


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(ValidationError):
        relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
@settings(max_examples=60, deadline=None)
def test_relative_entropy_properties(seed, d):
    rng = np.random.default_rng(seed)
    s, r = density_from(rng, d), density_from(rng, d)
    u = haar_unitary_from(rng, d)
    base = relative_entropy(s, r)
    assert base >= -1e-9
    assert abs(relative_entropy(u @ s @ u.conj().T, u @ r @ u.conj().T) - base) < 1e-9
    s2, r2 = density_from(rng, 2), density_from(rng, 2)
    assert abs(relative_entropy(kron(s, s2), kron(r, r2)) - base - relative_entropy(s2, r2)) < 1e-8
    big_s, big_r = kron(s, s2) * 0.5 + density_from(rng, 2 * d) * 0.5, density_from(rng, 2 * d)
    assert relative_entropy(ptrace_k(big_s, d, 2), ptrace_k(big_r, d, 2)) <= relative_entropy(big_s, big_r) + 1e-9


def test_relative_entropy_zero_iff_equal(rng):
    r = density_from(rng, 3)
    s = r + 1e-3 * (density_from(rng, 3) - r)
    assert relative_entropy(s, r) > 0


def test_holevo_single_member():
    ens = Ensemble([1.0], [np.diag([0.3, 0.7])])
    q = holevo_chi(ens, identity_channel(2))
    assert abs(q.chi) < 1e-12 and abs(q.chi_relative) < 1e-12


def test_holevo_noiseless_orthogonal_pair():
    ens = Ensemble([0.5, 0.5], [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    q = holevo_chi(ens, identity_channel(2))
    assert q.chi == pytest.approx(1.0, abs=1e-12)
    assert q.residual < 1e-12


def test_holevo_two_routes_agree(rng):
    states = [density_from(rng, 2) for _ in range(3)]
    ens = Ensemble(rng.dirichlet(np.ones(3)), np.stack(states))
    q = holevo_chi(ens, build_depolarizing(DepolarizingSpec(2, 0.3)))
    assert q.residual < 1e-8
    assert 0 <= q.chi <= 1 + 1e-9
